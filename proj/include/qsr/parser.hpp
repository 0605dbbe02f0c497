#pragma once

#include <string>
#include <string_view>

#include "qsr/instance.hpp"

namespace qsr {

/// Line-oriented instance format; '#' starts a comment.
///
///   algebra IA | RA | BA<p> | CDC | DIA | POINT
///   vars X Y Z
///   X { s f } Y          calculus constraint (BA codes as (c1,...,cp))
///   forw X               DIA only
///   x < y \/ u = v       POINT: one clause per line (horn-engine syntax)
///   x = 3/2              POINT: constant
///
/// Errors carry the offending line number.
Instance parse_instance(std::string_view text);

/// Writes an instance back in the same format. Point constraints without
/// clause syntax are written as a minimal ORD-Horn definition when one
/// exists, otherwise as one clause per excluded order.
std::string write_instance(const Instance& inst);

}  // namespace qsr
