#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drisk::fuzzy {

// Every linguistic variable in the system uses the same three ordered terms.
enum class Label : int { SMALL = 0, MEDIUM = 1, BIG = 2 };

inline constexpr std::array<Label, 3> kLabels = {Label::SMALL, Label::MEDIUM,
                                                 Label::BIG};

const char* to_string(Label l);
std::optional<Label> label_from_string(std::string_view s);

// Piecewise-linear membership function, triangular(a,b,c) or
// trapezoidal(a,b,c,d). Breakpoints must be non-decreasing; vertical edges
// (a==b, c==d) give shoulder shapes. Degree is 1 on the core and 0 outside
// the support.
class MembershipFunction {
 public:
  static MembershipFunction triangular(double a, double b, double c);
  static MembershipFunction trapezoidal(double a, double b, double c,
                                        double d);

  double operator()(double x) const;

  bool is_triangular() const { return n_ == 3; }
  std::span<const double> breakpoints() const { return {pts_.data(), n_}; }

  double support_lo() const { return pts_[0]; }
  double support_hi() const { return pts_[n_ - 1]; }
  // Whether the degree is still positive at the support endpoint itself
  // (vertical edge), used by the coverage check.
  bool positive_at_lo() const;
  bool positive_at_hi() const;
  double core_lo() const { return pts_[1]; }
  double core_hi() const { return n_ == 3 ? pts_[1] : pts_[2]; }

 private:
  MembershipFunction(std::array<double, 4> pts, std::size_t n);

  std::array<double, 4> pts_{};
  std::size_t n_ = 0;
};

// A named variable over a closed universe with exactly the three terms
// SMALL < MEDIUM < BIG. Construction verifies that every point of the
// universe has at least one term with positive degree.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double lo, double hi,
                     MembershipFunction small, MembershipFunction medium,
                     MembershipFunction big);

  // Standard overlapping partition on [lo, hi]:
  //   SMALL  = trapezoidal at the low end  (core first 20%)
  //   MEDIUM = triangular about the middle
  //   BIG    = trapezoidal at the high end (core last 20%)
  static LinguisticVariable default_partition(std::string name,
                                              double lo = 0.0,
                                              double hi = 1.0);

  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double midpoint() const { return 0.5 * (lo_ + hi_); }
  const MembershipFunction& term(Label l) const {
    return terms_[static_cast<int>(l)];
  }

  double clamp(double x) const;

  // Degree per label after clamping x into the universe.
  std::array<double, 3> fuzzify(double x) const;

 private:
  std::string name_;
  double lo_, hi_;
  std::array<MembershipFunction, 3> terms_;
};

// One inference rule: an antecedent label per input variable (nullopt is a
// wildcard matching any label) and a consequent label.
struct RuleRow {
  std::vector<std::optional<Label>> antecedents;
  Label consequent;
};

// Inference matrix over 1-3 input variables. Construction rejects tables
// that leave a label combination uncovered or cover one twice.
class RuleTable {
 public:
  RuleTable(std::string name, std::vector<std::string> input_vars,
            std::vector<RuleRow> rows);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& input_vars() const { return input_vars_; }
  std::size_t input_count() const { return input_vars_.size(); }
  const std::vector<RuleRow>& rows() const { return rows_; }

  // Consequent for an exact label combination (table lookup, no fuzziness).
  Label lookup(std::span<const Label> combo) const;

 private:
  std::string name_;
  std::vector<std::string> input_vars_;
  std::vector<RuleRow> rows_;
};

// Fuzzified value of one input variable, keyed by variable name.
struct FuzzifiedInput {
  std::string name;
  std::array<double, 3> degrees;
};

// Clipped per-label activation of an output variable. The variable is held
// by value; FuzzyOutput is freely copyable and shareable.
struct FuzzyOutput {
  LinguisticVariable variable;
  std::array<double, 3> activation{};

  bool any_fired() const {
    return activation[0] > 0.0 || activation[1] > 0.0 || activation[2] > 0.0;
  }
};

// Mamdani rule firing: strength = min over antecedent degrees (wildcards
// contribute 1), per-consequent activation = max over firing strengths.
// Throws ConfigError when a table input variable is missing from `inputs`.
FuzzyOutput infer(const RuleTable& rules, const LinguisticVariable& out_var,
                  std::span<const FuzzifiedInput> inputs);

struct Defuzzified {
  double value = 0.0;
  bool no_activation = false;  // zero area; value is the universe midpoint
};

// Centroid of the max-aggregated clipped membership surface, midpoint-sampled
// at `resolution` points across the output universe. resolution must be
// >= 100.
Defuzzified defuzzify_centroid(const FuzzyOutput& out, int resolution = 1000);

// Label with maximal activation; ties break toward the higher label and zero
// activation everywhere defaults to SMALL.
Label label_of(const FuzzyOutput& out);

// Crisp value + discrete label of one detector for one epoch.
struct Decision {
  double crisp = 0.0;
  Label label = Label::SMALL;
  bool no_activation = false;
};

Decision decide(const RuleTable& rules, const LinguisticVariable& out_var,
                std::span<const FuzzifiedInput> inputs, int resolution = 1000);

// ---------------------------------------------------------------------------
// Bundled defaults: the three inference matrices of the pipeline and the
// [0,1] decision-variable partition shared by every detector output.
// ---------------------------------------------------------------------------

// 3-input matrix (VALENCE, AROUSAL, DOMINANCE) -> D_EEG. The published
// matrix lists a wildcard row for VALENCE=BIG plus eight explicit rows; the
// remaining combinations are completed monotonically: VALENCE=MEDIUM rows
// stay MEDIUM, and VALENCE=SMALL rows promote to MEDIUM exactly when both
// AROUSAL and DOMINANCE are at least MEDIUM.
const RuleTable& eeg_rule_table();

// 2-input matrix (D_EYE, D_EEG) -> D_1.
const RuleTable& drowsiness_fusion_table();

// 2-input matrix (D_1, D_MOV) -> D_f.
const RuleTable& final_fusion_table();

// Default-partition variable on [0,1] for detector decisions.
LinguisticVariable decision_variable(std::string name);

}  // namespace drisk::fuzzy
