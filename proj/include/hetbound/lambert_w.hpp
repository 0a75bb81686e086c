#pragma once

#include <string_view>

namespace hetbound {

enum class LambertBranch { Principal, MinusOne };

std::string_view to_string(LambertBranch branch);

/// Solves w e^w = arg. Principal: arg >= -1/e, returns w >= -1.
/// MinusOne: -1/e <= arg < 0, returns w <= -1. Throws DomainError otherwise.
///
/// Halley iteration from a branch-point series or logarithmic seed, with a
/// bisection fallback if the iterate leaves its branch.
double lambert_w(LambertBranch branch, double arg);

}  // namespace hetbound
