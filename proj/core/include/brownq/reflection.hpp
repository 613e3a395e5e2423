#pragma once

#include "brownq/path.hpp"

namespace brownq {

/// Absolute tolerance for pointwise identities between reflection forms.
inline constexpr double kFpTolerance = 1e-12;

struct QueueDecomposition {
  Path departure;     // Q(f, g) = L_f(g)
  Path queue_length;  // f - Q(f, g)
  Path free;          // f - g
};

/// R(f)(t_i) = f(t_i) - min_{j <= i} min(f(t_j), 0).
Path skorokhod_reflect(const Path& f);

/// L_f(g)(t_i) = g(t_i) + min_{j <= i} min(f(t_j) - g(t_j), 0): the path
/// driven by g with f as an upper barrier. Equals f - R(f - g).
///
/// Requires identical grids (InvalidArgument) and f[0] >= g[0]
/// (PreconditionViolation).
Path reflect_under(const Path& barrier, const Path& driver);

/// Queue with arrival process `arrival`, service process `service` and
/// initial workload arrival[0] - service[0].
QueueDecomposition queue_op(const Path& arrival, const Path& service);

/// O(n^2) reference for reflect_under: the running minimum is recomputed
/// from index 0 at every point, in the same left-to-right order as the
/// kernel, so results agree bitwise.
Path brute_force_reflect(const Path& barrier, const Path& driver);

}  // namespace brownq
