#include "walkspectra/spectra.hpp"

#include "walkspectra/log_accumulator.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

namespace walkspectra {

std::string to_string(Walk walk) {
  switch (walk) {
    case Walk::TT2R: return "tt2r";
    case Walk::Cycles3: return "cycles3";
    case Walk::TPrime: return "tprime";
  }
  return "?";
}

Walk parse_walk(std::string_view text) {
  if (text == "tt2r") return Walk::TT2R;
  if (text == "cycles3") return Walk::Cycles3;
  if (text == "tprime") return Walk::TPrime;
  throw std::invalid_argument("unknown walk '" + std::string(text) + "'");
}

int min_formula_n(Walk walk) { return walk == Walk::Cycles3 ? 5 : 4; }

std::string to_string(Variant variant) {
  switch (variant) {
    case Variant::Whole: return "whole";
    case Variant::Plus: return "plus";
    case Variant::Minus: return "minus";
  }
  return "?";
}

std::string IrrepLabel::to_string() const {
  switch (variant) {
    case Variant::Whole: return shape.to_string();
    case Variant::Plus: return shape.to_string() + "+";
    case Variant::Minus: return shape.to_string() + "-";
  }
  return shape.to_string();
}

IrrepLabel parse_irrep(std::string_view text) {
  Variant variant = Variant::Whole;
  if (!text.empty() && (text.back() == '+' || text.back() == '-')) {
    variant = text.back() == '+' ? Variant::Plus : Variant::Minus;
    text.remove_suffix(1);
  }
  Partition shape = Partition::parse(text);
  if (variant == Variant::Whole && classify(shape) == PartitionClass::Thin) shape = shape.conjugate();
  IrrepLabel label{std::move(shape), variant};
  validate_label(label);
  return label;
}

void validate_label(const IrrepLabel& label) {
  const PartitionClass cls = classify(label.shape);
  if (label.variant == Variant::Whole && cls != PartitionClass::Fat) {
    throw std::invalid_argument("label " + label.to_string() +
                                ": a whole module needs a fat non-self-conjugate shape");
  }
  if (label.variant != Variant::Whole && cls != PartitionClass::SelfConjugate) {
    throw std::invalid_argument("label " + label.to_string() + ": +/- needs a self-conjugate shape");
  }
}

std::vector<IrrepLabel> irreducible_labels(int n) {
  std::vector<IrrepLabel> labels;
  for (const Partition& p : enumerate_partitions(n)) {
    switch (classify(p)) {
      case PartitionClass::Fat: labels.push_back({p, Variant::Whole}); break;
      case PartitionClass::SelfConjugate:
        labels.push_back({p, Variant::Plus});
        labels.push_back({p, Variant::Minus});
        break;
      case PartitionClass::Thin: break;
    }
  }
  return labels;
}

BigInt irrep_dimension(const IrrepLabel& label) {
  const BigInt d = dimension(label.shape);
  return label.variant == Variant::Whole ? d : BigInt(d / 2);
}

double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(value);
  if (bits < 1000) return std::log(value.convert_to<double>());
  const std::size_t shift = bits - 60;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

Multiplicity Multiplicity::from_exact(const BigInt& value) {
  Multiplicity m;
  m.exact = value;
  m.log_value = log_of(value);
  return m;
}

Multiplicity Multiplicity::from_log(double log_value) {
  Multiplicity m;
  m.log_value = log_value;
  return m;
}

bool Multiplicity::is_zero() const {
  if (exact) return *exact == 0;
  return log_value == -std::numeric_limits<double>::infinity();
}

double Multiplicity::to_double() const {
  if (exact) return exact->convert_to<double>();
  return std::exp(log_value);
}

Multiplicity& Multiplicity::operator+=(const Multiplicity& other) {
  if (exact && other.exact) {
    *exact += *other.exact;
    log_value = log_of(*exact);
    return *this;
  }
  SignedLogAccumulator acc;
  acc.add(SignedLog::from_log(1, log_value));
  acc.add(SignedLog::from_log(1, other.log_value));
  exact.reset();
  log_value = acc.value().log_magnitude;
  return *this;
}

std::string Multiplicity::to_string() const {
  if (exact) return exact->str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "log:%.17g", log_value);
  return buf;
}

Rational tt2r_eigenvalue(const CornerPairGroup& group, int n) {
  const Rational sum(group.content_n + group.content_n1, 2 * n - 3);
  switch (group.relation) {
    case CornerRelation::SameRow: return sum;
    case CornerRelation::SameColumn: return -sum;
    case CornerRelation::Neither: return group.content_n > group.content_n1 ? sum : -sum;
  }
  return sum;
}

Rational tprime_single_eigenvalue(const CornerPairGroup& group, int n) {
  const Rational a(group.content_n, n - 1);
  return a * a;
}

Rational three_cycle_eigenvalue(const Partition& lambda) {
  const std::int64_t n = lambda.n();
  if (n < 3) throw std::invalid_argument("three_cycle_eigenvalue: need n >= 3");
  // 2 * (sum c^2 - n(n-1)/2) keeps everything integral.
  const std::int64_t twice = 2 * content_square_sum(lambda) - n * (n - 1);
  return Rational(3 * twice, 2 * n * (n - 1) * (n - 2));
}

namespace {

using SpectrumMap = std::map<Rational, Multiplicity, std::greater<>>;

void add_to(SpectrumMap& map, const Rational& value, const Multiplicity& m) {
  if (m.is_zero()) return;
  auto [it, inserted] = map.try_emplace(value, m);
  if (!inserted) it->second += m;
}

std::vector<SpectrumEntry> flatten(const SpectrumMap& map) {
  std::vector<SpectrumEntry> out;
  out.reserve(map.size());
  for (const auto& [value, m] : map) out.push_back({value, m});
  return out;
}

Multiplicity group_multiplicity(const CornerPairGroup& g) {
  return g.exact_count ? Multiplicity::from_exact(*g.exact_count) : Multiplicity::from_log(g.log_count);
}

std::vector<CornerPairGroup> label_groups(const IrrepLabel& label, int n) {
  validate_label(label);
  if (label.shape.n() != n) throw std::invalid_argument("label " + label.to_string() + " is not a shape of n");
  const TableauFilter filter = label.variant == Variant::Whole ? TableauFilter::All : TableauFilter::Upper;
  return corner_pair_groups(label.shape, filter, n <= kExactMultiplicityMaxN);
}

void require_n(Walk walk, int n) {
  if (n < min_formula_n(walk)) {
    const std::string msg = to_string(walk) + " closed form needs n >= " + std::to_string(min_formula_n(walk)) +
                            "; use the brute-force oracle for n = " + std::to_string(n);
    if (walk == Walk::Cycles3) throw FormulaUnavailable(msg);
    throw std::invalid_argument(msg);
  }
}

}  // namespace

IrrepSpectrum tt2r_spectrum(const IrrepLabel& label, int n) {
  require_n(Walk::TT2R, n);
  SpectrumMap map;
  for (const CornerPairGroup& g : label_groups(label, n)) add_to(map, tt2r_eigenvalue(g, n), group_multiplicity(g));
  return {label, flatten(map)};
}

IrrepSpectrum three_cycle_spectrum(const IrrepLabel& label, int n) {
  require_n(Walk::Cycles3, n);
  validate_label(label);
  if (label.shape.n() != n) throw std::invalid_argument("label " + label.to_string() + " is not a shape of n");
  const BigInt dim = irrep_dimension(label);
  const Multiplicity m = n <= kExactMultiplicityMaxN ? Multiplicity::from_exact(dim) : Multiplicity::from_log(log_of(dim));
  return {label, {{normalized_three_cycle(label.shape), m}}};
}

BlockSpectrum tprime_blocks(const IrrepLabel& label, int n) {
  require_n(Walk::TPrime, n);
  SpectrumMap singles;
  std::map<std::pair<Rational, Rational>, Multiplicity> blocks;
  for (const CornerPairGroup& g : label_groups(label, n)) {
    const Multiplicity m = group_multiplicity(g);
    if (g.relation != CornerRelation::Neither) {
      add_to(singles, tprime_single_eigenvalue(g, n), m);
    } else if (g.content_n > g.content_n1 && !m.is_zero()) {
      // The swapped group carries the same count and shares this block.
      const auto key = std::make_pair(Rational(g.content_n, n - 1), Rational(g.content_n1, n - 1));
      auto [it, inserted] = blocks.try_emplace(key, m);
      if (!inserted) it->second += m;
    }
  }
  BlockSpectrum out;
  out.label = label;
  out.singles = flatten(singles);
  for (const auto& [ab, m] : blocks) out.blocks.push_back(Block{ab.first, ab.second, Rational(n - 1), m});
  return out;
}

IrrepSpectrum BlockSpectrum::eigenvalues() const {
  SpectrumMap map;
  for (const SpectrumEntry& e : singles) add_to(map, e.eigenvalue, e.multiplicity);
  for (const Block& b : blocks) {
    add_to(map, b.a * b.a, b.multiplicity);
    add_to(map, b.b * b.b, b.multiplicity);
  }
  return {label, flatten(map)};
}

IrrepSpectrum walk_spectrum(Walk walk, const IrrepLabel& label, int n) {
  switch (walk) {
    case Walk::TT2R: return tt2r_spectrum(label, n);
    case Walk::Cycles3: return three_cycle_spectrum(label, n);
    case Walk::TPrime: return tprime_blocks(label, n).eigenvalues();
  }
  throw std::invalid_argument("walk_spectrum: unknown walk");
}

namespace {

// Calls visit(eigenvalue, exact_count_or_null, log_count) for every
// Std(lambda)-indexed eigenvalue family of the walk.
template <class F>
void for_each_std_family(Walk walk, const Partition& lambda, bool exact, F&& visit) {
  const int n = lambda.n();
  if (walk == Walk::Cycles3) {
    const BigInt d = exact ? dimension(lambda) : BigInt(0);
    visit(three_cycle_eigenvalue(lambda), exact ? &d : nullptr, log_dimension(lambda));
    return;
  }
  for (const CornerPairGroup& g : corner_pair_groups(lambda, TableauFilter::All, exact)) {
    const Rational value = walk == Walk::TT2R ? tt2r_eigenvalue(g, n) : tprime_single_eigenvalue(g, n);
    visit(value, g.exact_count ? &*g.exact_count : nullptr, g.log_count);
  }
}

}  // namespace

std::vector<SpectrumEntry> std_indexed_spectrum(Walk walk, const Partition& lambda) {
  SpectrumMap map;
  const bool exact = lambda.n() <= kExactMultiplicityMaxN;
  for_each_std_family(walk, lambda, exact, [&](const Rational& v, const BigInt* count, double log_count) {
    add_to(map, v, count ? Multiplicity::from_exact(*count) : Multiplicity::from_log(log_count));
  });
  return flatten(map);
}

namespace {

std::vector<SpectrumEntry> aggregate_unchecked(Walk walk, int n) {
  // Sum over rho of d_rho spec(rho) equals half the sum over all shapes of
  // d_lambda times the Std(lambda)-indexed multiset.
  const bool exact = n <= kExactMultiplicityMaxN;
  std::map<Rational, BigInt, std::greater<>> exact_map;
  std::map<Rational, SignedLogAccumulator, std::greater<>> log_map;
  for (const Partition& lambda : enumerate_partitions(n)) {
    const double log_d = log_dimension(lambda);
    const BigInt d = exact ? dimension(lambda) : BigInt(0);
    for_each_std_family(walk, lambda, exact, [&](const Rational& v, const BigInt* count, double log_count) {
      if (exact) {
        exact_map[v] += d * *count;
      } else {
        log_map[v].add(SignedLog::from_log(1, log_d + log_count));
      }
    });
  }
  std::vector<SpectrumEntry> out;
  if (exact) {
    for (const auto& [v, total] : exact_map) {
      if (total != 0) out.push_back({v, Multiplicity::from_exact(total / 2)});
    }
  } else {
    for (const auto& [v, acc] : log_map) out.push_back({v, Multiplicity::from_log(acc.value().log_magnitude - std::log(2.0))});
  }
  return out;
}

}  // namespace

std::vector<SpectrumEntry> regular_spectrum_aggregate(Walk walk, int n) {
  require_n(walk, n);
  return aggregate_unchecked(walk, n);
}

std::vector<SpectrumEntry> ag_spectrum(int n) {
  if (n < 3) throw std::invalid_argument("ag_spectrum: need n >= 3");
  // AG_n is similar to (2n-3) T - I where T is the tt2r transition operator;
  // the tt2r corner formula is valid as an operator identity from n = 3.
  std::vector<SpectrumEntry> out;
  for (SpectrumEntry& e : aggregate_unchecked(Walk::TT2R, n)) {
    out.push_back({e.eigenvalue * Rational(2 * n - 3) - Rational(1), std::move(e.multiplicity)});
  }
  return out;
}

}  // namespace walkspectra
