#include "drisk/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>

#include "drisk/errors.hpp"

namespace drisk::fuzzy {

const char* to_string(Label l) {
  switch (l) {
    case Label::SMALL:
      return "SMALL";
    case Label::MEDIUM:
      return "MEDIUM";
    case Label::BIG:
      return "BIG";
  }
  return "?";
}

std::optional<Label> label_from_string(std::string_view s) {
  if (s == "SMALL") return Label::SMALL;
  if (s == "MEDIUM") return Label::MEDIUM;
  if (s == "BIG") return Label::BIG;
  return std::nullopt;
}

// --------------------------------------------------------------------------
// MembershipFunction
// --------------------------------------------------------------------------

MembershipFunction::MembershipFunction(std::array<double, 4> pts,
                                       std::size_t n)
    : pts_(pts), n_(n) {
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    if (!(pts_[i] <= pts_[i + 1]) || !std::isfinite(pts_[i])) {
      throw ConfigError("membership breakpoints must be finite and "
                        "non-decreasing");
    }
  }
  if (!std::isfinite(pts_[n_ - 1])) {
    throw ConfigError("membership breakpoints must be finite");
  }
  if (pts_[0] == pts_[n_ - 1]) {
    throw ConfigError("membership support must have positive width");
  }
}

MembershipFunction MembershipFunction::triangular(double a, double b,
                                                  double c) {
  return MembershipFunction({a, b, c, 0.0}, 3);
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b,
                                                   double c, double d) {
  return MembershipFunction({a, b, c, d}, 4);
}

double MembershipFunction::operator()(double x) const {
  const double a = pts_[0];
  const double b = pts_[1];
  const double c = n_ == 3 ? pts_[1] : pts_[2];
  const double d = pts_[n_ - 1];
  if (x < a || x > d) return 0.0;
  if (x < b) return (x - a) / (b - a);  // a < b here, x in [a, b)
  if (x <= c) return 1.0;
  return (d - x) / (d - c);
}

bool MembershipFunction::positive_at_lo() const { return pts_[0] == pts_[1]; }

bool MembershipFunction::positive_at_hi() const {
  return pts_[n_ - 2] == pts_[n_ - 1];
}

// --------------------------------------------------------------------------
// LinguisticVariable
// --------------------------------------------------------------------------

namespace {

// Supports must chain with strict overlap so that no point of the universe
// is left with all degrees zero.
void check_coverage(const std::string& name, double lo, double hi,
                    const std::array<MembershipFunction, 3>& terms) {
  struct Interval {
    double lo, hi;
    bool closed_lo, closed_hi;
  };
  std::array<Interval, 3> iv;
  for (int i = 0; i < 3; ++i) {
    iv[i] = {terms[i].support_lo(), terms[i].support_hi(),
             terms[i].positive_at_lo(), terms[i].positive_at_hi()};
  }
  std::sort(iv.begin(), iv.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  const auto covered_from = [&](const Interval& v, double x) {
    return v.lo < x || (v.lo == x && v.closed_lo);
  };
  if (!covered_from(iv[0], lo)) {
    throw ConfigError("variable '" + name + "': universe start uncovered");
  }
  double reach = iv[0].hi;
  bool reach_closed = iv[0].closed_hi;
  for (int i = 1; i < 3; ++i) {
    if (reach >= hi) break;
    // next support must begin strictly before the current reach (or touch a
    // closed endpoint) to avoid a zero-degree gap
    if (iv[i].lo > reach || (iv[i].lo == reach && !(reach_closed || iv[i].closed_lo))) {
      throw ConfigError("variable '" + name + "': coverage gap near " +
                        std::to_string(reach));
    }
    if (iv[i].hi > reach) {
      reach = iv[i].hi;
      reach_closed = iv[i].closed_hi;
    }
  }
  if (reach < hi || (reach == hi && !reach_closed)) {
    throw ConfigError("variable '" + name + "': universe end uncovered");
  }
}

}  // namespace

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       MembershipFunction small,
                                       MembershipFunction medium,
                                       MembershipFunction big)
    : name_(std::move(name)),
      lo_(lo),
      hi_(hi),
      terms_{std::move(small), std::move(medium), std::move(big)} {
  if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_)) {
    throw ConfigError("variable '" + name_ + "': universe must satisfy lo < hi");
  }
  check_coverage(name_, lo_, hi_, terms_);
}

LinguisticVariable LinguisticVariable::default_partition(std::string name,
                                                         double lo,
                                                         double hi) {
  const double w = hi - lo;
  return LinguisticVariable(
      std::move(name), lo, hi,
      MembershipFunction::trapezoidal(lo, lo, lo + 0.2 * w, lo + 0.45 * w),
      MembershipFunction::triangular(lo + 0.25 * w, lo + 0.5 * w,
                                     lo + 0.75 * w),
      MembershipFunction::trapezoidal(lo + 0.55 * w, lo + 0.8 * w, hi, hi));
}

double LinguisticVariable::clamp(double x) const {
  return std::min(hi_, std::max(lo_, x));
}

std::array<double, 3> LinguisticVariable::fuzzify(double x) const {
  const double xc = clamp(x);
  return {terms_[0](xc), terms_[1](xc), terms_[2](xc)};
}

// --------------------------------------------------------------------------
// RuleTable
// --------------------------------------------------------------------------

namespace {

bool row_matches(const RuleRow& row, std::span<const Label> combo) {
  for (std::size_t i = 0; i < combo.size(); ++i) {
    if (row.antecedents[i] && *row.antecedents[i] != combo[i]) return false;
  }
  return true;
}

}  // namespace

RuleTable::RuleTable(std::string name, std::vector<std::string> input_vars,
                     std::vector<RuleRow> rows)
    : name_(std::move(name)),
      input_vars_(std::move(input_vars)),
      rows_(std::move(rows)) {
  const std::size_t n = input_vars_.size();
  if (n < 1 || n > 3) {
    throw ConfigError("table '" + name_ + "': needs 1-3 input variables");
  }
  for (const auto& row : rows_) {
    if (row.antecedents.size() != n) {
      throw ConfigError("table '" + name_ +
                        "': rule arity does not match input count");
    }
  }
  // Enumerate all label combinations; each must match exactly one row.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n; ++i) combos *= 3;
  for (std::size_t code = 0; code < combos; ++code) {
    std::array<Label, 3> combo{};
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      combo[i] = static_cast<Label>(rest % 3);
      rest /= 3;
    }
    int matches = 0;
    for (const auto& row : rows_) {
      if (row_matches(row, {combo.data(), n})) ++matches;
    }
    if (matches == 0) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) {
        s += std::string(i ? " " : "") + to_string(combo[i]);
      }
      throw ConfigError("table '" + name_ + "': no rule covers (" + s + ")");
    }
    if (matches > 1) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) {
        s += std::string(i ? " " : "") + to_string(combo[i]);
      }
      throw ConfigError("table '" + name_ + "': conflicting rules for (" + s +
                        ")");
    }
  }
}

Label RuleTable::lookup(std::span<const Label> combo) const {
  if (combo.size() != input_count()) {
    throw ConfigError("table '" + name_ + "': lookup arity mismatch");
  }
  for (const auto& row : rows_) {
    if (row_matches(row, combo)) return row.consequent;
  }
  throw ConfigError("table '" + name_ + "': uncovered combination");  // unreachable
}

// --------------------------------------------------------------------------
// Inference
// --------------------------------------------------------------------------

FuzzyOutput infer(const RuleTable& rules, const LinguisticVariable& out_var,
                  std::span<const FuzzifiedInput> inputs) {
  const std::size_t n = rules.input_count();
  std::array<const std::array<double, 3>*, 3> degree_of{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& want = rules.input_vars()[i];
    for (const auto& in : inputs) {
      if (in.name == want) {
        degree_of[i] = &in.degrees;
        break;
      }
    }
    if (!degree_of[i]) {
      throw ConfigError("table '" + rules.name() + "': missing input '" +
                        want + "'");
    }
  }

  FuzzyOutput out{out_var, {0.0, 0.0, 0.0}};
  for (const auto& row : rules.rows()) {
    double strength = 1.0;  // wildcard antecedents contribute 1
    for (std::size_t i = 0; i < n; ++i) {
      if (row.antecedents[i]) {
        const int li = static_cast<int>(*row.antecedents[i]);
        strength = std::min(strength, (*degree_of[i])[li]);
      }
    }
    auto& act = out.activation[static_cast<int>(row.consequent)];
    act = std::max(act, strength);
  }
  return out;
}

Defuzzified defuzzify_centroid(const FuzzyOutput& out, int resolution) {
  if (resolution < 100) {
    throw ConfigError("defuzzification resolution must be >= 100");
  }
  const LinguisticVariable& var = out.variable;
  const double step = var.width() / resolution;
  double area = 0.0;
  double moment = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double x = var.lo() + (i + 0.5) * step;
    double mu = 0.0;
    for (Label l : kLabels) {
      const int li = static_cast<int>(l);
      mu = std::max(mu, std::min(out.activation[li], var.term(l)(x)));
    }
    area += mu;
    moment += mu * x;
  }
  if (area <= 0.0) {
    return {var.midpoint(), true};
  }
  return {moment / area, false};
}

Label label_of(const FuzzyOutput& out) {
  if (!out.any_fired()) return Label::SMALL;
  Label best = Label::SMALL;
  for (Label l : kLabels) {
    if (out.activation[static_cast<int>(l)] >=
        out.activation[static_cast<int>(best)]) {
      best = l;  // >= walks ties up to the higher-risk label
    }
  }
  return best;
}

Decision decide(const RuleTable& rules, const LinguisticVariable& out_var,
                std::span<const FuzzifiedInput> inputs, int resolution) {
  const FuzzyOutput out = infer(rules, out_var, inputs);
  const Defuzzified d = defuzzify_centroid(out, resolution);
  return {d.value, label_of(out), d.no_activation};
}

// --------------------------------------------------------------------------
// Bundled tables
// --------------------------------------------------------------------------

namespace {

constexpr auto S = Label::SMALL;
constexpr auto M = Label::MEDIUM;
constexpr auto B = Label::BIG;
constexpr std::optional<Label> W = std::nullopt;  // wildcard

RuleTable make_eeg_table() {
  std::vector<RuleRow> rows = {
      // published rows
      {{B, W, W}, B},
      {{M, S, S}, M},
      {{M, S, M}, M},
      {{M, M, S}, M},
      {{M, M, M}, M},
      {{S, S, S}, S},
      {{S, S, M}, S},
      {{S, M, S}, S},
      {{S, M, M}, M},
      // monotone completion of the unlisted combinations
      {{M, S, B}, M},
      {{M, M, B}, M},
      {{M, B, S}, M},
      {{M, B, M}, M},
      {{M, B, B}, M},
      {{S, S, B}, S},
      {{S, B, S}, S},
      {{S, M, B}, M},
      {{S, B, M}, M},
      {{S, B, B}, M},
  };
  return RuleTable("D_EEG", {"VALENCE", "AROUSAL", "DOMINANCE"},
                   std::move(rows));
}

RuleTable make_pairwise_max_table(std::string name, std::string in_a,
                                  std::string in_b) {
  std::vector<RuleRow> rows;
  for (Label a : kLabels) {
    for (Label b : kLabels) {
      rows.push_back({{a, b}, std::max(a, b)});
    }
  }
  return RuleTable(std::move(name), {std::move(in_a), std::move(in_b)},
                   std::move(rows));
}

}  // namespace

const RuleTable& eeg_rule_table() {
  static const RuleTable table = make_eeg_table();
  return table;
}

const RuleTable& drowsiness_fusion_table() {
  static const RuleTable table =
      make_pairwise_max_table("D_1", "D_EYE", "D_EEG");
  return table;
}

const RuleTable& final_fusion_table() {
  static const RuleTable table =
      make_pairwise_max_table("D_F", "D_1", "D_MOV");
  return table;
}

LinguisticVariable decision_variable(std::string name) {
  return LinguisticVariable::default_partition(std::move(name), 0.0, 1.0);
}

}  // namespace drisk::fuzzy
