#include "jtree/errors.hpp"

namespace jtree {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::cycle: return "CYCLE";
    case Errc::parent_ge_child: return "PARENT_GE_CHILD";
    case Errc::duplicate_node: return "DUPLICATE_NODE";
    case Errc::unknown_node: return "UNKNOWN_NODE";
    case Errc::not_comparable: return "NOT_COMPARABLE";
    case Errc::window_too_short: return "WINDOW_TOO_SHORT";
    case Errc::p_out_of_range: return "P_OUT_OF_RANGE";
    case Errc::too_large: return "TOO_LARGE";
    case Errc::invalid_certificate: return "INVALID_CERTIFICATE";
    case Errc::params_invalid: return "PARAMS_INVALID";
    case Errc::branch_too_short: return "BRANCH_TOO_SHORT";
    case Errc::segments_comparable: return "SEGMENTS_COMPARABLE";
    case Errc::too_many_branches: return "TOO_MANY_BRANCHES";
    case Errc::unsupported_combination: return "UNSUPPORTED_COMBINATION";
    case Errc::not_normalized: return "NOT_NORMALIZED";
    case Errc::schema: return "SCHEMA";
  }
  return "UNKNOWN";
}

}  // namespace jtree
