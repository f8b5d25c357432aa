#include "qa/ising.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace qa {

namespace {

constexpr int kMaxSites = 62;  // masks and dimensions are held in 64-bit integers

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("invalid number '" + std::string(tok) + "'", line);
  return value;
}

long parse_long(std::string_view tok, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("invalid integer '" + std::string(tok) + "'", line);
  return value;
}

std::uint64_t sites_mask(const std::vector<int>& sites) {
  std::uint64_t m = 0;
  for (int s : sites) m |= std::uint64_t{1} << s;
  return m;
}

}  // namespace

void validate_instance(const IsingInstance& inst) {
  if (inst.n_sites < 1) throw Error("instance needs at least one site");
  if (inst.n_sites > kMaxSites)
    throw Error("n_sites " + std::to_string(inst.n_sites) + " exceeds the structural limit of " +
                std::to_string(kMaxSites));
  if (inst.terms.empty()) throw Error("instance needs at least one term");
  for (const IsingTerm& term : inst.terms) {
    if (term.sites.empty()) throw Error("term needs at least one site");
    if (static_cast<int>(term.sites.size()) > inst.n_sites)
      throw Error("term has more sites than the instance");
    int prev = -1;
    for (int s : term.sites) {
      if (s < 0 || s >= inst.n_sites)
        throw Error("site index " + std::to_string(s) + " out of range [0, " +
                    std::to_string(inst.n_sites) + ")");
      if (s == prev) throw Error("duplicate site " + std::to_string(s) + " within a term");
      if (s < prev) throw Error("term sites must be sorted ascending");
      prev = s;
    }
    if (!std::isfinite(term.coefficient)) throw Error("non-finite coupling coefficient");
  }
}

IsingInstance parse_instance(std::string_view text) {
  IsingInstance inst;
  bool have_n = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "n") {
      if (have_n) throw ParseError("duplicate 'n' line", line_no);
      if (toks.size() != 2) throw ParseError("expected 'n <N>'", line_no);
      const long n = parse_long(toks[1], line_no);
      if (n < 1 || n > kMaxSites)
        throw ParseError("site count must be in [1, " + std::to_string(kMaxSites) + "]", line_no);
      inst.n_sites = static_cast<int>(n);
      have_n = true;
    } else if (toks[0] == "term") {
      if (!have_n) throw ParseError("'term' before the 'n' line", line_no);
      if (toks.size() < 3) throw ParseError("expected 'term <J> <site> [<site> ...]'", line_no);
      IsingTerm term;
      term.coefficient = parse_double(toks[1], line_no);
      for (std::size_t k = 2; k < toks.size(); ++k) {
        const long s = parse_long(toks[k], line_no);
        if (s < 0 || s >= inst.n_sites)
          throw ParseError("site index " + std::to_string(s) + " out of range [0, " +
                               std::to_string(inst.n_sites) + ")",
                           line_no);
        term.sites.push_back(static_cast<int>(s));
      }
      std::sort(term.sites.begin(), term.sites.end());
      if (std::adjacent_find(term.sites.begin(), term.sites.end()) != term.sites.end())
        throw ParseError("duplicate site within a term", line_no);
      inst.terms.push_back(std::move(term));
    } else {
      throw ParseError("unknown directive '" + std::string(toks[0]) + "'", line_no);
    }
  }
  if (!have_n) throw ParseError("missing 'n' line");
  if (inst.terms.empty()) throw ParseError("instance has no terms");
  validate_instance(inst);
  return inst;
}

std::string format_instance(const IsingInstance& inst, std::string_view comment) {
  std::ostringstream out;
  out.precision(17);
  if (!comment.empty()) {
    std::size_t pos = 0;
    while (pos <= comment.size()) {
      std::size_t eol = comment.find('\n', pos);
      out << "# " << comment.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos)
          << '\n';
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }
  out << "n " << inst.n_sites << '\n';
  for (const IsingTerm& term : inst.terms) {
    out << "term " << term.coefficient;
    for (int s : term.sites) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

int driver_term_count(DriverKind kind, int n_sites) {
  const int n = n_sites;
  return kind == DriverKind::TransverseField ? n : n + n * (n - 1) / 2;
}

const char* driver_name(DriverKind kind) {
  return kind == DriverKind::TransverseField ? "transverse" : "pairwise";
}

DriverKind driver_from_name(std::string_view name) {
  if (name == "transverse") return DriverKind::TransverseField;
  if (name == "pairwise") return DriverKind::TransverseFieldPlusPairwise;
  throw Error("unknown driver '" + std::string(name) + "' (expected transverse|pairwise)");
}

Eigen::VectorXd potential_diagonal(const IsingInstance& inst, const Limits& limits) {
  validate_instance(inst);
  if (inst.dim() > limits.matrix_free_limit)
    throw CapacityError("state space 2^" + std::to_string(inst.n_sites) +
                        " exceeds the matrix-free limit");
  const std::uint64_t dim = inst.dim();
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (const IsingTerm& term : inst.terms) {
    const std::uint64_t mask = sites_mask(term.sites);
    const double coeff = term.coefficient;
    for (std::uint64_t b = 0; b < dim; ++b) {
      // product of s_i over the term's sites: -1 for odd overlap with the mask
      const int sign = (std::popcount(b & mask) & 1) ? -1 : 1;
      energy[static_cast<Eigen::Index>(b)] -= coeff * sign;
    }
  }
  return energy;
}

HamiltonianView make_hamiltonian(const IsingInstance& inst, DriverKind driver, double gamma,
                                 const Limits& limits) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw Error("gamma must be a finite nonnegative real");
  HamiltonianView view;
  view.potential_diag = potential_diagonal(inst, limits);
  view.driver = driver;
  view.gamma = gamma;
  view.n_sites = inst.n_sites;
  return view;
}

Eigen::MatrixXd materialize_dense(const HamiltonianView& h, const Limits& limits) {
  if (h.dim() > limits.dense_limit)
    throw CapacityError("state space 2^" + std::to_string(h.n_sites) + " exceeds the dense limit");
  const std::uint64_t dim = h.dim();
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) m(b, b) = h.potential_diag[b];
  for (std::uint64_t b = 0; b < dim; ++b) {
    for (int i = 0; i < h.n_sites; ++i) {
      const std::uint64_t c = b ^ (std::uint64_t{1} << i);
      m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) = -h.gamma;
    }
    if (h.driver == DriverKind::TransverseFieldPlusPairwise) {
      for (int i = 0; i < h.n_sites; ++i)
        for (int j = i + 1; j < h.n_sites; ++j) {
          const std::uint64_t c = b ^ ((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
          m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) = -h.gamma;
        }
    }
  }
  return m;
}

double driver_xbasis_eigenvalue(DriverKind driver, int n_sites, int ones) {
  const long long u = n_sites - 2ll * ones;  // sum of sigma^x eigenvalues
  if (driver == DriverKind::TransverseField) return static_cast<double>(u);
  return static_cast<double>(u + (u * u - n_sites) / 2);
}

Eigen::VectorXd driver_xbasis_eigenvalues(DriverKind driver, int n_sites) {
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  Eigen::VectorXd eigs(static_cast<Eigen::Index>(dim));
  for (std::uint64_t m = 0; m < dim; ++m)
    eigs[static_cast<Eigen::Index>(m)] = driver_xbasis_eigenvalue(driver, n_sites, std::popcount(m));
  return eigs;
}

}  // namespace qa
