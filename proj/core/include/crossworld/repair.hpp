#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace crossworld {

/// Right-continuous empirical cdf over a training multiset (ties kept):
/// eval(v) = (# values <= v) / n.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> values);  // throws InputError if empty

    double eval(double v) const;
    /// Generalized inverse: smallest stored value whose cdf reaches q.
    double quantile(double q) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_values() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

enum class RepairMode { empirical, gaussian };

/// Group-order-preserving parity post-processor: a score is mapped from its
/// quantile within its own arm to the same quantile of the pooled marginal.
/// Within each arm the map is nondecreasing, so per-arm rankings survive;
/// across arms the output distributions coincide in the large-sample limit.
///
/// The empirical mode reproduces the reference lookup exactly: with q the
/// arm-conditional cdf value and m the pooled training size, the output is
/// the sorted pooled score at index round(m * q) (ties-to-even), clamped to
/// [1, m], 1-based. The gaussian mode replaces the per-arm cdf with a fitted
/// normal and reuses the same marginal lookup.
class RepairModel {
  public:
    RepairMode mode() const { return mode_; }
    const std::vector<double>& marginal() const { return marginal_; }
    const std::vector<std::string>& arms() const { return arm_names_; }
    /// Sorted training scores of one arm (empirical mode only).
    const std::vector<double>& arm_sorted(const std::string& arm) const;
    /// Fitted (mean, sd) of one arm (gaussian mode only).
    std::pair<double, double> arm_gaussian(const std::string& arm) const;

    /// Optional g is a monotone output map applied to the looked-up marginal
    /// value; identity when absent.
    double repair(const std::string& arm, double y_bar,
                  const std::function<double(double)>* g = nullptr) const;

  private:
    friend RepairModel fit_repair(const std::vector<std::pair<std::string, double>>&, RepairMode);

    RepairMode mode_ = RepairMode::empirical;
    std::vector<std::string> arm_names_;
    std::map<std::string, std::vector<double>> per_arm_sorted_;      // empirical mode
    std::map<std::string, std::pair<double, double>> per_arm_gauss_;  // mean, sd
    std::vector<double> marginal_;                                   // sorted pooled scores
};

/// Builds per-arm cdfs and the pooled marginal from (arm, score) rows.
/// Requires at least one score for every arm that appears and two pooled
/// scores overall.
RepairModel fit_repair(const std::vector<std::pair<std::string, double>>& training,
                       RepairMode mode);

double repair_score(const RepairModel& model, const std::string& arm, double y_bar,
                    const std::function<double(double)>* g = nullptr);

/// Element-wise repair; within each arm the output order matches the input
/// order (ties may collapse).
std::vector<double> repair_batch(const RepairModel& model,
                                 const std::vector<std::pair<std::string, double>>& rows,
                                 const std::function<double(double)>* g = nullptr);

/// CSV with header `a,y_bar`.
std::vector<std::pair<std::string, double>> read_arm_scores_csv(std::istream& in);
/// CSV with header `a,y_bar,y_hat`.
void write_repaired_csv(std::ostream& out,
                        const std::vector<std::pair<std::string, double>>& rows,
                        const std::vector<double>& repaired);

}  // namespace crossworld
