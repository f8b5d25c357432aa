#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qa/errors.hpp"

namespace qa {

/// Capacity budgets, expressed as state-space dimensions (2^N).
struct Limits {
  std::size_t dense_limit = std::size_t{1} << 14;
  std::size_t matrix_free_limit = std::size_t{1} << 22;
  std::size_t enumeration_limit = std::size_t{1} << 24;
};

/// One signed k-body coupling. Contributes -coefficient * prod_{i in sites} s_i
/// to the classical energy, with s_i in {+1, -1}.
struct IsingTerm {
  double coefficient = 0.0;
  std::vector<int> sites;  // strictly increasing indices in [0, n_sites)
};

/// A k-body Ising cost function on n_sites spins.
///
/// Basis convention used throughout: configuration index b encodes spin i in
/// bit i, with bit value 0 <-> s_i = +1 and bit value 1 <-> s_i = -1.
struct IsingInstance {
  int n_sites = 0;
  std::vector<IsingTerm> terms;

  std::size_t dim() const { return std::size_t{1} << n_sites; }
};

/// Throws when a structural invariant is violated (empty term list, site out
/// of range, duplicate sites within a term, ...).
void validate_instance(const IsingInstance& inst);

/// Parses the text instance format:
///   # comment
///   n <N>
///   term <J> <site> [<site> ...]
/// Sites may appear in any order within a line; duplicates are rejected.
IsingInstance parse_instance(std::string_view text);

/// Inverse of parse_instance. `comment` lines, if given, are emitted with a
/// leading '#'.
std::string format_instance(const IsingInstance& inst, std::string_view comment = "");

enum class DriverKind {
  TransverseField,              ///< -Gamma sum_i sigma^x_i
  TransverseFieldPlusPairwise,  ///< -Gamma (sum_i sigma^x_i + sum_{i<j} sigma^x_i sigma^x_j)
};

/// Number of generator terms: N, or N + N(N-1)/2 for the pairwise variant.
int driver_term_count(DriverKind kind, int n_sites);

const char* driver_name(DriverKind kind);
DriverKind driver_from_name(std::string_view name);

/// Classical energies of all 2^N configurations, indexed by bit pattern.
Eigen::VectorXd potential_diagonal(const IsingInstance& inst, const Limits& limits = {});

/// Immutable view of H = diag(potential) - gamma * G at one value of gamma,
/// where G is the driver generator with unit coefficients.
struct HamiltonianView {
  Eigen::VectorXd potential_diag;
  DriverKind driver = DriverKind::TransverseField;
  double gamma = 0.0;
  int n_sites = 0;

  std::size_t dim() const { return static_cast<std::size_t>(potential_diag.size()); }
};

HamiltonianView make_hamiltonian(const IsingInstance& inst, DriverKind driver, double gamma,
                                 const Limits& limits = {});

/// Dense symmetric materialization. Off-diagonals are -gamma on single-bit-flip
/// pairs and, for the pairwise driver, also on double-bit-flip pairs.
Eigen::MatrixXd materialize_dense(const HamiltonianView& h, const Limits& limits = {});

/// Eigenvalues of the driver generator in the sigma^x product basis, indexed
/// by the x-basis pattern (bit value 0 <-> sigma^x eigenvalue +1). They depend
/// only on the popcount of the index.
Eigen::VectorXd driver_xbasis_eigenvalues(DriverKind driver, int n_sites);

/// Driver generator eigenvalue for an x-basis index with `ones` set bits.
double driver_xbasis_eigenvalue(DriverKind driver, int n_sites, int ones);

namespace detail {
inline void check_apply_sizes(const HamiltonianView& h, Eigen::Index vsize, const Limits& limits) {
  if (static_cast<std::size_t>(vsize) != h.dim())
    throw DimensionError("vector length " + std::to_string(vsize) + " does not match state space 2^" +
                         std::to_string(h.n_sites));
  if (h.dim() > limits.matrix_free_limit)
    throw CapacityError("state space 2^" + std::to_string(h.n_sites) +
                        " exceeds the matrix-free limit");
}
}  // namespace detail

/// y = G v, where G is the driver generator (unit coefficients, no gamma).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_driver_generator(
    DriverKind driver, int n_sites, const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  if (static_cast<std::uint64_t>(v.size()) != dim)
    throw DimensionError("vector length does not match state space 2^" + std::to_string(n_sites));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x = v.derived();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y(x.size());
  for (std::uint64_t b = 0; b < dim; ++b) {
    Scalar acc{};
    for (int i = 0; i < n_sites; ++i) acc += x[b ^ (std::uint64_t{1} << i)];
    if (driver == DriverKind::TransverseFieldPlusPairwise) {
      for (int i = 0; i < n_sites; ++i)
        for (int j = i + 1; j < n_sites; ++j)
          acc += x[b ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j))];
    }
    y[b] = acc;
  }
  return y;
}

/// y = H v without materializing H. Linear and Hermitian; works for real and
/// complex vectors alike.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_hamiltonian(
    const HamiltonianView& h, const Eigen::MatrixBase<Derived>& v, const Limits& limits = {}) {
  using Scalar = typename Derived::Scalar;
  detail::check_apply_sizes(h, v.size(), limits);
  const std::uint64_t dim = h.dim();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x = v.derived();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y(x.size());
  const double g = h.gamma;
  for (std::uint64_t b = 0; b < dim; ++b) {
    Scalar acc = h.potential_diag[static_cast<Eigen::Index>(b)] * x[b];
    for (int i = 0; i < h.n_sites; ++i) acc -= g * x[b ^ (std::uint64_t{1} << i)];
    if (h.driver == DriverKind::TransverseFieldPlusPairwise) {
      for (int i = 0; i < h.n_sites; ++i)
        for (int j = i + 1; j < h.n_sites; ++j)
          acc -= g * x[b ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j))];
    }
    y[b] = acc;
  }
  return y;
}

}  // namespace qa
