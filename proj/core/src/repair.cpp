#include "crossworld/repair.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "crossworld/errors.hpp"
#include "crossworld/math.hpp"

namespace crossworld {

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw InputError("EmpiricalCdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::eval(double v) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), v);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double q) const {
    if (!(q >= 0.0 && q <= 1.0)) throw InputError("EmpiricalCdf::quantile: q outside [0, 1]");
    const double n = static_cast<double>(sorted_.size());
    const auto idx = static_cast<std::size_t>(std::max(1.0, std::ceil(q * n)));
    return sorted_[std::min(idx, sorted_.size()) - 1];
}

namespace {

// round(m * q) with ties-to-even, clamped into [1, m]; 1-based index into the
// sorted pooled scores. Mirrors the reference quantile lookup including its
// 0 -> 1 clamp.
std::size_t marginal_index(double q, std::size_t m) {
    const double raw = std::nearbyint(static_cast<double>(m) * q);
    if (raw < 1.0) return 1;
    if (raw > static_cast<double>(m)) return m;
    return static_cast<std::size_t>(raw);
}

}  // namespace

RepairModel fit_repair(const std::vector<std::pair<std::string, double>>& training,
                       RepairMode mode) {
    if (training.size() < 2) throw InputError("fit_repair: need at least two pooled scores");

    RepairModel model;
    model.mode_ = mode;
    std::map<std::string, std::vector<double>> groups;
    for (const auto& [arm, score] : training) {
        groups[arm].push_back(score);
        model.marginal_.push_back(score);
    }
    std::sort(model.marginal_.begin(), model.marginal_.end());

    for (auto& [arm, scores] : groups) {
        if (scores.empty()) throw InputError("fit_repair: arm '" + arm + "' has no scores");
        model.arm_names_.push_back(arm);
        if (mode == RepairMode::empirical) {
            std::sort(scores.begin(), scores.end());
            model.per_arm_sorted_[arm] = std::move(scores);
        } else {
            const double mu = mean(scores);
            const double sd = scores.size() >= 2 ? std::sqrt(variance(scores)) : 0.0;
            model.per_arm_gauss_[arm] = {mu, sd};
        }
    }
    return model;
}

const std::vector<double>& RepairModel::arm_sorted(const std::string& arm) const {
    const auto it = per_arm_sorted_.find(arm);
    if (it == per_arm_sorted_.end()) throw InputError("arm_sorted: unknown arm '" + arm + "'");
    return it->second;
}

std::pair<double, double> RepairModel::arm_gaussian(const std::string& arm) const {
    const auto it = per_arm_gauss_.find(arm);
    if (it == per_arm_gauss_.end()) throw InputError("arm_gaussian: unknown arm '" + arm + "'");
    return it->second;
}

double RepairModel::repair(const std::string& arm, double y_bar,
                           const std::function<double(double)>* g) const {
    double q;
    if (mode_ == RepairMode::empirical) {
        const auto it = per_arm_sorted_.find(arm);
        if (it == per_arm_sorted_.end()) throw InputError("repair: unknown arm '" + arm + "'");
        const auto& sorted = it->second;
        const auto ub = std::upper_bound(sorted.begin(), sorted.end(), y_bar);
        q = static_cast<double>(ub - sorted.begin()) / static_cast<double>(sorted.size());
    } else {
        const auto it = per_arm_gauss_.find(arm);
        if (it == per_arm_gauss_.end()) throw InputError("repair: unknown arm '" + arm + "'");
        const auto [mu, sd] = it->second;
        q = (sd > 0.0) ? normal_cdf((y_bar - mu) / sd) : (y_bar < mu ? 0.0 : 1.0);
    }
    const double value = marginal_[marginal_index(q, marginal_.size()) - 1];
    return g ? (*g)(value) : value;
}

double repair_score(const RepairModel& model, const std::string& arm, double y_bar,
                    const std::function<double(double)>* g) {
    return model.repair(arm, y_bar, g);
}

std::vector<double> repair_batch(const RepairModel& model,
                                 const std::vector<std::pair<std::string, double>>& rows,
                                 const std::function<double(double)>* g) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& [arm, y_bar] : rows) out.push_back(model.repair(arm, y_bar, g));
    return out;
}

std::vector<std::pair<std::string, double>> read_arm_scores_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("arm-score csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "a,y_bar") {
        throw InputError("arm-score csv: expected header 'a,y_bar', got '" + line + "'");
    }
    std::vector<std::pair<std::string, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InputError("arm-score csv line " + std::to_string(lineno) + ": missing comma");
        }
        const std::string arm = line.substr(0, comma);
        const std::string value = line.substr(comma + 1);
        try {
            std::size_t used = 0;
            const double y = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            rows.emplace_back(arm, y);
        } catch (const std::exception&) {
            throw InputError("arm-score csv line " + std::to_string(lineno) +
                             ": bad numeric value '" + value + "'");
        }
    }
    return rows;
}

void write_repaired_csv(std::ostream& out,
                        const std::vector<std::pair<std::string, double>>& rows,
                        const std::vector<double>& repaired) {
    if (rows.size() != repaired.size()) throw InputError("write_repaired_csv: length mismatch");
    out << "a,y_bar,y_hat\n";
    out.precision(17);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << rows[i].first << ',' << rows[i].second << ',' << repaired[i] << '\n';
    }
}

}  // namespace crossworld
