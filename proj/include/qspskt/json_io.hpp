#ifndef QSPSKT_JSON_IO_HPP
#define QSPSKT_JSON_IO_HPP

#include <string>

#include "qspskt/cheb.hpp"
#include "qspskt/driver.hpp"
#include "qspskt/protocol.hpp"
#include "qspskt/skt.hpp"

namespace qspskt {

// Serialization for the external file formats. Doubles survive a round trip
// bit-exactly (shortest round-trip printing).

std::string protocol_to_json(const Protocol& p);
Protocol protocol_from_json(const std::string& text);

std::string sample_to_json(const FunctionSample& s);
FunctionSample sample_from_json(const std::string& text);

std::string series_to_json(const ChebSeries& s);
ChebSeries series_from_json(const std::string& text);

// Gate nets carry a format version tag; entry products are rebuilt from the
// instruction words on load and checked against cached values.
std::string su2net_to_json(const Su2Net& net);
Su2Net su2net_from_json(const std::string& text);

// Function nets with level metadata (eps, ball radius, Lipschitz, level).
std::string function_net_to_json(const FunctionNet& net);
FunctionNet function_net_from_json(const std::string& text);

}  // namespace qspskt

#endif
