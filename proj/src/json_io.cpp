#include "qspskt/json_io.hpp"

#include <json.hpp>

namespace qspskt {

using nlohmann::json;

namespace {

json unitary_to_json(const Unitary2& u) {
    return json::array({json::array({u.a.real(), u.a.imag()}), json::array({u.b.real(), u.b.imag()}),
                        json::array({u.c.real(), u.c.imag()}), json::array({u.d.real(), u.d.imag()})});
}

Unitary2 unitary_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) fail_parse("fixed gate must be a 4-entry matrix array");
    auto cplx = [](const json& e) {
        if (!e.is_array() || e.size() != 2) fail_parse("complex entry must be [re, im]");
        return Complex{e[0].get<double>(), e[1].get<double>()};
    };
    return Unitary2::raw(cplx(j[0]), cplx(j[1]), cplx(j[2]), cplx(j[3]));
}

json oracle_to_json(const Oracle& o) {
    json j;
    if (o.kind == Oracle::Kind::Standard) {
        j["kind"] = "standard";
        return j;
    }
    j["kind"] = "generalized";
    if (!o.name.empty()) {
        j["name"] = o.name;
        if (o.name == "linear") j["slope"] = o.slope;
    } else {
        j["grid"] = o.grid;
        j["values"] = o.values;
    }
    return j;
}

Oracle oracle_from_json(const json& j) {
    std::string kind = j.value("kind", "standard");
    if (kind == "standard") return Oracle::standard();
    if (kind != "generalized") fail_parse("unknown oracle kind: " + kind);
    if (j.contains("name")) {
        return Oracle::generalized_named(j["name"].get<std::string>(), j.value("slope", 0.0));
    }
    return Oracle::generalized_sampled(j.at("grid").get<std::vector<double>>(),
                                       j.at("values").get<std::vector<double>>());
}

json parse_or_fail(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail_parse("malformed JSON");
    return j;
}

}  // namespace

std::string protocol_to_json(const Protocol& p) {
    json j;
    j["convention"] = p.convention;
    j["phases"] = p.phases;
    j["parity"] = (p.parity() == 0) ? "even" : "odd";
    json word = json::array();
    for (const auto& s : p.word) {
        switch (s.kind) {
            case StepKind::Phase:
                word.push_back({{"type", "phase"}, {"index", s.phase_index}});
                break;
            case StepKind::Oracle:
                word.push_back({{"type", "oracle"}});
                break;
            case StepKind::OracleInv:
                word.push_back({{"type", "oracle"}, {"inverse", true}});
                break;
            case StepKind::Fixed:
                word.push_back({{"type", "fixed"}, {"matrix", unitary_to_json(s.fixed)}});
                break;
        }
    }
    j["interleave"] = word;
    j["oracle"] = oracle_to_json(p.oracle);
    return j.dump(2);
}

Protocol protocol_from_json(const std::string& text) {
    json j = parse_or_fail(text);
    Protocol p;
    try {
        p.convention = j.value("convention", "standard");
        p.phases = j.at("phases").get<std::vector<double>>();
        if (j.contains("oracle")) p.oracle = oracle_from_json(j["oracle"]);
        if (j.contains("interleave")) {
            for (const auto& e : j["interleave"]) {
                std::string type = e.at("type").get<std::string>();
                if (type == "phase") {
                    int idx = e.at("index").get<int>();
                    if (idx < 0 || idx >= static_cast<int>(p.phases.size())) {
                        fail_parse("phase index out of range");
                    }
                    p.word.push_back({StepKind::Phase, idx, {}});
                } else if (type == "oracle") {
                    bool inv = e.value("inverse", false);
                    p.word.push_back({inv ? StepKind::OracleInv : StepKind::Oracle, -1, {}});
                } else if (type == "fixed") {
                    Unitary2 u = unitary_from_json(e.at("matrix"));
                    if (!u.is_special_unitary(1e-9)) fail_parse("fixed gate is not special-unitary");
                    p.word.push_back({StepKind::Fixed, -1, u});
                } else {
                    fail_parse("unknown interleave entry type: " + type);
                }
            }
        } else {
            p = Protocol::standard(p.phases, p.oracle);
            p.convention = j.value("convention", "standard");
        }
    } catch (const json::exception& e) {
        fail_parse(std::string("protocol JSON: ") + e.what());
    }
    return p;
}

std::string sample_to_json(const FunctionSample& s) {
    json j;
    j["grid"] = s.grid;
    j["values"] = s.values;
    return j.dump(2);
}

FunctionSample sample_from_json(const std::string& text) {
    json j = parse_or_fail(text);
    FunctionSample s;
    try {
        s.grid = j.at("grid").get<std::vector<double>>();
        s.values = j.at("values").get<std::vector<double>>();
    } catch (const json::exception& e) {
        fail_parse(std::string("sample JSON: ") + e.what());
    }
    s.validate();
    return s;
}

std::string series_to_json(const ChebSeries& s) {
    json j;
    j["basis"] = s.basis;
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(json::array({c.real(), c.imag()}));
    j["coeffs"] = coeffs;
    return j.dump(2);
}

ChebSeries series_from_json(const std::string& text) {
    json j = parse_or_fail(text);
    ChebSeries s;
    try {
        s.basis = j.value("basis", "chebyshev-T");
        for (const auto& e : j.at("coeffs")) {
            if (e.is_array() && e.size() == 2) {
                s.coeffs.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else if (e.is_number()) {
                s.coeffs.emplace_back(e.get<double>(), 0.0);
            } else {
                fail_parse("series coefficient must be [re, im] or a number");
            }
        }
    } catch (const json::exception& e) {
        fail_parse(std::string("series JSON: ") + e.what());
    }
    return s;
}

namespace {

constexpr int kNetFormatVersion = 1;

}  // namespace

std::string su2net_to_json(const Su2Net& net) {
    json j;
    j["format"] = "qspskt-su2net";
    j["version"] = kNetFormatVersion;
    j["eps0"] = net.eps0;
    json gates = json::array();
    for (std::size_t i = 0; i < net.instructions.gates.size(); ++i) {
        gates.push_back({{"name", net.instructions.names[i]},
                         {"matrix", unitary_to_json(net.instructions.gates[i])}});
    }
    j["instructions"] = std::move(gates);
    json entries = json::array();
    for (const auto& e : net.entries) entries.push_back(e.indices);
    j["entries"] = std::move(entries);
    return j.dump();
}

Su2Net su2net_from_json(const std::string& text) {
    json j = parse_or_fail(text);
    try {
        if (j.value("format", "") != "qspskt-su2net") fail_parse("not a gate-net document");
        if (j.value("version", -1) != kNetFormatVersion) {
            fail_parse("unsupported gate-net format version");
        }
        std::vector<std::string> names;
        std::vector<Unitary2> gates;
        for (const auto& g : j.at("instructions")) {
            names.push_back(g.at("name").get<std::string>());
            gates.push_back(unitary_from_json(g.at("matrix")));
        }
        Su2Net net;
        net.instructions = InstructionSet::make(std::move(names), std::move(gates));
        net.eps0 = j.at("eps0").get<double>();
        net.bucket_cell = net.eps0 / 2.0;
        for (const auto& e : j.at("entries")) {
            GateWord w;
            w.indices = e.get<std::vector<int>>();
            w.product = w.remultiply(net.instructions);
            net.insert(std::move(w));
        }
        return net;
    } catch (const json::exception& e) {
        fail_parse(std::string("gate-net JSON: ") + e.what());
    }
}

std::string function_net_to_json(const FunctionNet& net) {
    json j;
    j["format"] = "qspskt-function-net";
    j["version"] = kNetFormatVersion;
    j["level"] = net.level;
    j["eps"] = net.eps;
    j["ball_radius"] = net.ball_radius;
    j["lipschitz"] = net.lipschitz;
    j["grid"] = net.grid;
    json entries = json::array();
    for (const auto& e : net.entries) {
        entries.push_back({{"protocol", json::parse(protocol_to_json(e.protocol))},
                           {"projection", json::parse(sample_to_json(e.projection))},
                           {"intended", e.intended},
                           {"residual", e.residual}});
    }
    j["entries"] = std::move(entries);
    return j.dump();
}

FunctionNet function_net_from_json(const std::string& text) {
    json j = parse_or_fail(text);
    try {
        if (j.value("format", "") != "qspskt-function-net") {
            fail_parse("not a function-net document");
        }
        if (j.value("version", -1) != kNetFormatVersion) {
            fail_parse("unsupported function-net format version");
        }
        FunctionNet net;
        net.level = j.at("level").get<int>();
        net.eps = j.at("eps").get<double>();
        net.ball_radius = j.at("ball_radius").get<double>();
        net.lipschitz = j.at("lipschitz").get<double>();
        net.grid = j.at("grid").get<std::vector<double>>();
        for (const auto& e : j.at("entries")) {
            NetEntry entry;
            entry.protocol = protocol_from_json(e.at("protocol").dump());
            entry.projection = sample_from_json(e.at("projection").dump());
            entry.intended = e.at("intended").get<std::vector<double>>();
            entry.residual = e.at("residual").get<double>();
            net.entries.push_back(std::move(entry));
        }
        return net;
    } catch (const json::exception& e) {
        fail_parse(std::string("function-net JSON: ") + e.what());
    }
}

}  // namespace qspskt
