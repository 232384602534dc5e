#include "qspskt.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "qspskt/driver.hpp"
#include "qspskt/json_io.hpp"
#include "qspskt/phasefind.hpp"
#include "qspskt/protocol.hpp"
#include "qspskt/verify.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qspskt_status to_status(const qspskt::Error& e) {
    switch (e.code()) {
        case qspskt::ErrorCode::Precondition: return QSPSKT_ERR_PRECONDITION;
        case qspskt::ErrorCode::Convergence: return QSPSKT_ERR_CONVERGENCE;
        case qspskt::ErrorCode::Parse: return QSPSKT_ERR_PARSE;
        case qspskt::ErrorCode::Internal: return QSPSKT_ERR_INTERNAL;
    }
    return QSPSKT_ERR_INTERNAL;
}

template <typename Fn>
qspskt_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return QSPSKT_OK;
    } catch (const qspskt::Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QSPSKT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QSPSKT_ERR_INTERNAL;
    }
}

}  // namespace

struct qspskt_protocol {
    qspskt::Protocol value;
};

extern "C" {

const char* qspskt_version(void) { return "0.1.0"; }

const char* qspskt_last_error(void) { return g_last_error.c_str(); }

void qspskt_string_free(char* s) { delete[] s; }

void qspskt_protocol_free(qspskt_protocol* p) { delete p; }

qspskt_status qspskt_protocol_parse(const char* json_text, qspskt_protocol** out) {
    return guarded([&] {
        if (!json_text || !out) qspskt::fail_precondition("null argument");
        auto p = new qspskt_protocol{qspskt::protocol_from_json(json_text)};
        *out = p;
    });
}

qspskt_status qspskt_protocol_to_json(const qspskt_protocol* p, char** json_out) {
    return guarded([&] {
        if (!p || !json_out) qspskt::fail_precondition("null argument");
        *json_out = dup_string(qspskt::protocol_to_json(p->value));
    });
}

qspskt_status qspskt_protocol_eval(const qspskt_protocol* p, double x, double matrix_out[8]) {
    return guarded([&] {
        if (!p || !matrix_out) qspskt::fail_precondition("null argument");
        qspskt::Unitary2 u = qspskt::evaluate(p->value, x);
        if (u.unitarity_defect() > 1e-9) {
            qspskt::fail_precondition("protocol evaluates to a non-unitary matrix");
        }
        matrix_out[0] = u.a.real();
        matrix_out[1] = u.a.imag();
        matrix_out[2] = u.b.real();
        matrix_out[3] = u.b.imag();
        matrix_out[4] = u.c.real();
        matrix_out[5] = u.c.imag();
        matrix_out[6] = u.d.real();
        matrix_out[7] = u.d.imag();
    });
}

qspskt_status qspskt_protocol_eval_report(const qspskt_protocol* p, const double* xs, size_t n,
                                          char** json_out) {
    return guarded([&] {
        if (!p || !xs || !json_out) qspskt::fail_precondition("null argument");
        json nodes = json::array();
        for (size_t i = 0; i < n; ++i) {
            qspskt::Unitary2 u = qspskt::evaluate(p->value, xs[i]);
            if (u.unitarity_defect() > 1e-9) {
                qspskt::fail_precondition("protocol evaluates to a non-unitary matrix at x = " +
                                          std::to_string(xs[i]));
            }
            qspskt::PauliForm pf = qspskt::pauli_form(u);
            json node;
            node["x"] = xs[i];
            node["matrix"] = {{u.a.real(), u.a.imag()},
                              {u.b.real(), u.b.imag()},
                              {u.c.real(), u.c.imag()},
                              {u.d.real(), u.d.imag()}};
            node["pauli"] = {{"theta", pf.theta}, {"axis", pf.axis}};
            node["re_p"] = u.a.real();
            node["pi_top_left"] = qspskt::project_pi(u, qspskt::PiVariant::ImTopLeft);
            node["pi_top_right"] = qspskt::project_pi(u, qspskt::PiVariant::ImTopRight);
            nodes.push_back(std::move(node));
        }
        json rep;
        rep["phase_length"] = p->value.phase_length();
        rep["oracle_length"] = p->value.oracle_length();
        rep["nodes"] = std::move(nodes);
        *json_out = dup_string(rep.dump(2));
    });
}

qspskt_status qspskt_fit(const char* target_series_json, int degree, double tolerance,
                         int symmetric, uint64_t seed, char** protocol_json_out,
                         double* residual_out) {
    return guarded([&] {
        if (!target_series_json || !protocol_json_out || !residual_out) {
            qspskt::fail_precondition("null argument");
        }
        qspskt::ChebSeries target = qspskt::series_from_json(target_series_json);
        qspskt::FitOptions opt;
        opt.symmetric = symmetric != 0;
        opt.seed = seed;
        if (tolerance > 0) opt.tolerance = tolerance;
        qspskt::FitResult r = qspskt::fit_phases(target, degree, opt);
        *protocol_json_out = dup_string(qspskt::protocol_to_json(r.protocol));
        *residual_out = r.residual;
    });
}

qspskt_status qspskt_synthesize(const char* target_series_json, double epsilon,
                                const char* config_json, char** protocol_json_out,
                                char** ledger_json_out) {
    return guarded([&] {
        if (!target_series_json || !protocol_json_out || !ledger_json_out) {
            qspskt::fail_precondition("null argument");
        }
        qspskt::ChebSeries target = qspskt::series_from_json(target_series_json);
        qspskt::SynthesisConfig cfg;
        if (config_json && std::strlen(config_json) > 0) {
            json j = json::parse(config_json, nullptr, false);
            if (j.is_discarded()) qspskt::fail_parse("malformed synthesis config JSON");
            cfg.eps0 = j.value("epsilon0", cfg.eps0);
            cfg.degree0 = j.value("degree0", cfg.degree0);
            cfg.max_levels = j.value("max_levels", cfg.max_levels);
            cfg.force_levels = j.value("force_levels", cfg.force_levels);
            cfg.seed = j.value("seed", cfg.seed);
            cfg.kappa = j.value("kappa", cfg.kappa);
            std::string builder = j.value("builder", "phase-finder");
            if (builder == "phase-finder") {
                cfg.builder = qspskt::InitialBuilder::PhaseFinder;
            } else if (builder == "fourier-lcu") {
                cfg.builder = qspskt::InitialBuilder::FourierLcu;
            } else {
                qspskt::fail_parse("unknown builder: " + builder);
            }
        }
        qspskt::SynthesisResult r = qspskt::synthesize(target, epsilon, cfg);
        *protocol_json_out = dup_string(qspskt::protocol_to_json(r.protocol));
        json ledger = json::array();
        for (const auto& l : r.ledger) {
            ledger.push_back({{"level", l.level},
                              {"epsilon", l.eps},
                              {"length", l.length},
                              {"residual", l.measured_residual}});
        }
        json out;
        out["levels"] = ledger;
        out["residual"] = r.residual;
        out["met_tolerance"] = r.met_tolerance;
        *ledger_json_out = dup_string(out.dump(2));
        if (!r.met_tolerance) {
            qspskt::fail_convergence("synthesis residual " + std::to_string(r.residual) +
                                     " above requested " + std::to_string(epsilon));
        }
    });
}

qspskt_status qspskt_verify(const char* suite_name, char** report_json_out) {
    return guarded([&] {
        if (!suite_name || !report_json_out) qspskt::fail_precondition("null argument");
        qspskt::VerifyReport rep = qspskt::run_verify_suite(suite_name);
        json rows = json::array();
        for (const auto& r : rep.rows) {
            rows.push_back({{"check", r.check},
                            {"pass", r.pass},
                            {"metric", r.metric},
                            {"threshold", r.threshold},
                            {"note", r.note}});
        }
        json out;
        out["suite"] = rep.suite;
        out["pass"] = rep.pass();
        out["rows"] = rows;
        *report_json_out = dup_string(out.dump(2));
    });
}

}  // extern "C"
