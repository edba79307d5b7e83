#include "walkspectra/group_oracle.hpp"

#include "walkspectra/limits.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace walkspectra {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

int permutation_sign(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(p[i])) {
      seen[i] = true;
      ++length;
    }
    if (length % 2 == 0) sign = -sign;
  }
  return sign;
}

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation cycle_permutation(int n, std::initializer_list<int> symbols) {
  Permutation p = identity_permutation(n);
  const std::vector<int> s(symbols);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int from = s[i];
    const int to = s[(i + 1) % s.size()];
    if (from < 1 || from > n || to < 1 || to > n) throw std::out_of_range("cycle_permutation: symbol out of range");
    p[static_cast<std::size_t>(from - 1)] = to - 1;
  }
  return p;
}

int fixed_points(const Permutation& p) {
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) count += p[i] == static_cast<int>(i) ? 1 : 0;
  return count;
}

AlternatingGroup::AlternatingGroup(int n) : n_(n) {
  if (n < 3 || n > 9) throw std::out_of_range("AlternatingGroup: n must be in 3..9, got " + std::to_string(n));
  factorial_.assign(static_cast<std::size_t>(n) + 1, 1);
  for (int k = 1; k <= n; ++k) factorial_[static_cast<std::size_t>(k)] = factorial_[static_cast<std::size_t>(k - 1)] * static_cast<std::size_t>(k);
  size_ = factorial_[static_cast<std::size_t>(n)] / 2;
}

std::size_t AlternatingGroup::rank(const Permutation& p) const {
  std::size_t lehmer = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j) smaller += p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)] ? 1 : 0;
    lehmer += static_cast<std::size_t>(smaller) * factorial_[static_cast<std::size_t>(n_ - 1 - i)];
  }
  return lehmer / 2;
}

Permutation AlternatingGroup::unrank(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("AlternatingGroup::unrank: index out of range");
  std::size_t code = 2 * index;
  std::vector<int> pool(static_cast<std::size_t>(n_));
  std::iota(pool.begin(), pool.end(), 0);
  Permutation p;
  p.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const std::size_t f = factorial_[static_cast<std::size_t>(n_ - 1 - i)];
    const std::size_t digit = code / f;
    code %= f;
    p.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  if (permutation_sign(p) < 0) std::swap(p[static_cast<std::size_t>(n_ - 2)], p[static_cast<std::size_t>(n_ - 1)]);
  return p;
}

std::vector<std::uint32_t> AlternatingGroup::right_multiplication_table(const Permutation& s) const {
  std::vector<std::uint32_t> table(size_);
  for (std::size_t x = 0; x < size_; ++x) table[x] = static_cast<std::uint32_t>(rank(compose(unrank(x), s)));
  return table;
}

std::vector<MeasureAtom> walk_atoms(Walk walk, int n) {
  if (n < 3) throw std::out_of_range("walk_atoms: need n >= 3");
  std::vector<MeasureAtom> atoms;
  switch (walk) {
    case Walk::TT2R: {
      const double mass = 1.0 / (2.0 * n - 3.0);
      atoms.push_back({identity_permutation(n), mass});
      for (int i = 1; i <= n - 2; ++i) {
        atoms.push_back({cycle_permutation(n, {i, n - 1, n}), mass});
        atoms.push_back({cycle_permutation(n, {i, n, n - 1}), mass});
      }
      break;
    }
    case Walk::Cycles3: {
      const double mass = 3.0 / (static_cast<double>(n) * (n - 1) * (n - 2));
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          for (int k = j + 1; k <= n; ++k) {
            atoms.push_back({cycle_permutation(n, {i, j, k}), mass});
            atoms.push_back({cycle_permutation(n, {i, k, j}), mass});
          }
        }
      }
      break;
    }
    case Walk::TPrime: {
      const double kappa = n - 1.0;
      atoms.push_back({identity_permutation(n), 1.0 / kappa});
      for (int i = 1; i <= n - 1; ++i) {
        for (int j = 1; j <= n - 1; ++j) {
          if (i != j) atoms.push_back({cycle_permutation(n, {i, j, n}), 1.0 / (kappa * kappa)});
        }
      }
      break;
    }
  }
  return atoms;
}

GroupDistribution walk_measure(Walk walk, int n) {
  const AlternatingGroup group(n);
  GroupDistribution dist(group.size(), 0.0);
  for (const MeasureAtom& atom : walk_atoms(walk, n)) dist[group.rank(atom.element)] += atom.mass;
  return dist;
}

ConvolutionOperator::ConvolutionOperator(Walk walk, int n) : group_(n) {
  const std::vector<MeasureAtom> atoms = walk_atoms(walk, n);
  require_memory(atoms.size() * group_.size() * sizeof(std::uint32_t), "convolution tables");
  for (const MeasureAtom& atom : atoms) {
    masses_.push_back(atom.mass);
    tables_.push_back(group_.right_multiplication_table(atom.element));
  }
}

void ConvolutionOperator::step(const GroupDistribution& in, GroupDistribution& out) const {
  out.assign(in.size(), 0.0);
  for (std::size_t a = 0; a < tables_.size(); ++a) {
    const double mass = masses_[a];
    const std::vector<std::uint32_t>& table = tables_[a];
    for (std::size_t x = 0; x < in.size(); ++x) out[table[x]] += in[x] * mass;
  }
}

GroupDistribution distribution_at(Walk walk, int n, int k, std::size_t start_rank) {
  if (k < 0) throw std::invalid_argument("distribution_at: k must be >= 0");
  const ConvolutionOperator op(walk, n);
  GroupDistribution cur(op.group().size(), 0.0);
  GroupDistribution next;
  cur.at(start_rank) = 1.0;
  for (int step = 0; step < k; ++step) {
    op.step(cur, next);
    cur.swap(next);
  }
  return cur;
}

double tv_to_uniform(const GroupDistribution& dist) {
  const double u = 1.0 / static_cast<double>(dist.size());
  double total = 0.0;
  for (double v : dist) total += std::fabs(v - u);
  return 0.5 * total;
}

double exact_tv(Walk walk, int n, int k) { return tv_to_uniform(distribution_at(walk, n, k)); }

std::vector<double> exact_tv_curve(Walk walk, int n, int kmax, std::size_t start_rank) {
  if (kmax < 0) throw std::invalid_argument("exact_tv_curve: kmax must be >= 0");
  const ConvolutionOperator op(walk, n);
  GroupDistribution cur(op.group().size(), 0.0);
  GroupDistribution next;
  cur.at(start_rank) = 1.0;
  std::vector<double> curve{tv_to_uniform(cur)};
  for (int step = 0; step < kmax; ++step) {
    op.step(cur, next);
    cur.swap(next);
    curve.push_back(tv_to_uniform(cur));
  }
  return curve;
}

namespace {

void require_dense(int n, int max_n, const char* what) {
  if (n > max_n) throw std::length_error(std::string(what) + ": dense matrices limited to n <= " + std::to_string(max_n));
  const AlternatingGroup group(n);
  // Matrix plus eigensolver workspace.
  require_memory(3 * group.size() * group.size() * sizeof(double), what);
}

Eigen::MatrixXd dense_operator(const AlternatingGroup& group, const std::vector<MeasureAtom>& atoms) {
  const auto size = static_cast<Eigen::Index>(group.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (const MeasureAtom& atom : atoms) {
    const std::vector<std::uint32_t> table = group.right_multiplication_table(atom.element);
    for (Eigen::Index x = 0; x < size; ++x) m(x, table[static_cast<std::size_t>(x)]) += atom.mass;
  }
  return m;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  // The generating sets are inverse-closed with symmetric masses, so the
  // matrices are already symmetric and need no reweighting.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  return std::vector<double>(values.data(), values.data() + values.size());
}

}  // namespace

std::vector<double> brute_spectrum(Walk walk, int n) {
  require_dense(n, 7, "brute_spectrum");
  const AlternatingGroup group(n);
  return symmetric_eigenvalues(dense_operator(group, walk_atoms(walk, n)));
}

std::vector<double> brute_ag_spectrum(int n) {
  require_dense(n, 7, "brute_ag_spectrum");
  const AlternatingGroup group(n);
  std::vector<MeasureAtom> generators;
  for (int i = 3; i <= n; ++i) {
    generators.push_back({cycle_permutation(n, {1, i, 2}), 1.0});
    generators.push_back({cycle_permutation(n, {1, 2, i}), 1.0});
  }
  return symmetric_eigenvalues(dense_operator(group, generators));
}

PlancherelResult plancherel_check(const GroupAlgebraElement& phi, const GroupAlgebraElement& psi, int n) {
  require_dense(n, 6, "plancherel_check");
  const AlternatingGroup group(n);
  if (phi.size() != group.size() || psi.size() != group.size()) {
    throw std::invalid_argument("plancherel_check: element size does not match |A_n|");
  }
  const auto size = static_cast<Eigen::Index>(group.size());
  std::vector<Permutation> elements(group.size());
  std::vector<std::size_t> inverse_rank(group.size());
  for (std::size_t g = 0; g < group.size(); ++g) elements[g] = group.unrank(g);
  for (std::size_t g = 0; g < group.size(); ++g) inverse_rank[g] = group.rank(inverse(elements[g]));

  double lhs = 0.0;
  for (std::size_t x = 0; x < group.size(); ++x) lhs += phi[inverse_rank[x]] * psi[x];

  auto fourier = [&](const GroupAlgebraElement& f) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t g = 0; g < group.size(); ++g) {
      if (f[g] == 0.0) continue;
      const Permutation& g_inv = elements[inverse_rank[g]];
      for (std::size_t h = 0; h < group.size(); ++h) {
        m(static_cast<Eigen::Index>(group.rank(compose(elements[h], g_inv))), static_cast<Eigen::Index>(h)) += f[g];
      }
    }
    return m;
  };
  const Eigen::MatrixXd a = fourier(phi);
  const Eigen::MatrixXd b = fourier(psi);
  const double rhs = (a * b).trace() / static_cast<double>(group.size());
  return {lhs, rhs, std::fabs(lhs - rhs)};
}

namespace {

using IntegerAlgebra = std::map<Permutation, long long>;

IntegerAlgebra multiply(const IntegerAlgebra& a, const IntegerAlgebra& b) {
  IntegerAlgebra out;
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) out[compose(x, y)] += cx * cy;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

IntegerAlgebra add(IntegerAlgebra a, const IntegerAlgebra& b, long long scale = 1) {
  for (const auto& [x, c] : b) a[x] += scale * c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

IntegerAlgebra single(const Permutation& p) { return {{p, 1}}; }

IntegerAlgebra scaled_measure(Walk walk, int n, double scale) {
  IntegerAlgebra out;
  for (const MeasureAtom& atom : walk_atoms(walk, n)) out[atom.element] += std::llround(atom.mass * scale);
  return out;
}

IntegerAlgebra yjm(int n, int i) {
  IntegerAlgebra sum;
  for (int k = 1; k < i; ++k) sum[cycle_permutation(n, {k, i})] += 1;
  return multiply(single(cycle_permutation(n, {1, 2})), sum);
}

}  // namespace

AlgebraReport algebra_identity_checks(int n) {
  if (n < 3 || n > 7) throw std::out_of_range("algebra_identity_checks: n must be in 3..7");
  AlgebraReport report;
  const long long kappa = n - 1;
  const IntegerAlgebra p_prime = scaled_measure(Walk::TPrime, n, static_cast<double>(kappa * kappa));
  const IntegerAlgebra j_n = yjm(n, n);
  report.yjm_ok = multiply(j_n, j_n) == p_prime;

  const IntegerAlgebra p = scaled_measure(Walk::TT2R, n, 2.0 * n - 3.0);
  if (n > 3) {
    const IntegerAlgebra prefix = multiply(single(cycle_permutation(n, {1, 2})), single(cycle_permutation(n, {n - 1, n})));
    report.pn_ok = multiply(prefix, add(yjm(n, n - 1), j_n)) == p;
  }
  report.commutator_nonzero = !add(multiply(p, p_prime), multiply(p_prime, p), -1).empty();
  return report;
}

double brute_comparison_sum(Walk a, int ka, Walk b, int kb, int n) {
  const GroupDistribution da = distribution_at(a, n, ka);
  const GroupDistribution db = distribution_at(b, n, kb);
  double total = 0.0;
  for (std::size_t g = 0; g < da.size(); ++g) total += (da[g] - db[g]) * (da[g] - db[g]);
  return static_cast<double>(da.size()) * total;
}

double dense_power_trace_difference(Walk a, int ka, Walk b, int kb, int n) {
  require_dense(n, 6, "dense_power_trace_difference");
  const AlternatingGroup group(n);
  auto power = [&](Walk w, int k) {
    const Eigen::MatrixXd m = dense_operator(group, walk_atoms(w, n));
    Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    Eigen::MatrixXd base = m;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) result = result * base;
      base = base * base;
    }
    return result;
  };
  const Eigen::MatrixXd diff = power(a, ka) - power(b, kb);
  return (diff * diff).trace();
}

}  // namespace walkspectra

namespace walkspectra {

double ExactTv::to_double() const {
  if (numerator == 0) return 0.0;
  return std::exp(log_of(numerator) - log_of(denominator));
}

std::vector<ExactTv> exact_tv_curve_rational(Walk walk, int n, int kmax) {
  if (n > 7) throw std::length_error("exact_tv_curve_rational: limited to n <= 7");
  if (kmax < 0) throw std::invalid_argument("exact_tv_curve_rational: kmax must be >= 0");
  const AlternatingGroup group(n);
  // Integer weights w_s with common denominator D.
  std::int64_t denom = 0;
  std::vector<std::int64_t> weights;
  std::vector<std::vector<std::uint32_t>> tables;
  const std::vector<MeasureAtom> atoms = walk_atoms(walk, n);
  switch (walk) {
    case Walk::TT2R: denom = 2 * n - 3; break;
    case Walk::Cycles3: denom = static_cast<std::int64_t>(n) * (n - 1) * (n - 2) / 3; break;
    case Walk::TPrime: denom = static_cast<std::int64_t>(n - 1) * (n - 1); break;
  }
  for (const MeasureAtom& atom : atoms) {
    weights.push_back(std::llround(atom.mass * static_cast<double>(denom)));
    tables.push_back(group.right_multiplication_table(atom.element));
  }
  const BigInt order = group.size();
  std::vector<BigInt> cur(group.size(), 0);
  std::vector<BigInt> next(group.size());
  cur[0] = 1;
  BigInt scale = 1;  // D^k
  auto tv = [&] {
    BigInt total = 0;
    for (const BigInt& c : cur) {
      const BigInt diff = order * c - scale;
      total += diff < 0 ? BigInt(-diff) : diff;
    }
    return ExactTv{total, 2 * order * scale};
  };
  std::vector<ExactTv> curve{tv()};
  for (int step = 0; step < kmax; ++step) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      for (std::size_t x = 0; x < cur.size(); ++x) {
        if (cur[x] != 0) next[tables[a][x]] += cur[x] * weights[a];
      }
    }
    cur.swap(next);
    scale *= denom;
    curve.push_back(tv());
  }
  return curve;
}

}  // namespace walkspectra
