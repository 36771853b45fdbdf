#pragma once

#include <string>

#include <json.hpp>

#include "jtree/jt2p.hpp"
#include "jtree/jtg.hpp"
#include "jtree/tree.hpp"
#include "jtree/vector.hpp"

namespace jtree {

using Json = nlohmann::ordered_json;

/// Rounds to 15 significant digits; all emitted numbers pass through this.
double round15(double x);
Json json_number(double x);

Json load_json_file(const std::string& path);  // schema error on parse failure
void write_json_file(const std::string& path, const Json& j);

// Tree format: {"nodes":[{"id":int,"parent":int|null}]}; ROOT encoded as null.
TreePrefix tree_from_json(const Json& j);
Json tree_to_json(const TreePrefix& t);

// Vector format: {"<node>": value} where value is a number or "num/den".
SparseVector vector_from_json(const Json& j);
Json vector_to_json(const SparseVector& x);

// Params format: {"m":[...],"n":[...],"gamma":{"root":j0,"<node>":j,...},
//                 "strict_growth":bool}.
JTGParams params_from_json(const Json& j);
Json params_to_json(const JTGParams& p);

Json certificate_to_json(const Jt2pCertificate& c);
Jt2pCertificate certificate_from_json(const Json& j);

Json segment_to_json(const Segment& s);

}  // namespace jtree
