#ifndef SANDLAB_REPORT_HPP
#define SANDLAB_REPORT_HPP

#include "sandlab/numeric.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace sandlab {

using Json = nlohmann::ordered_json;

// One checked inequality (or identity) at one parameter point.
struct LemmaReport {
    std::string lemma_id;
    Json params = Json::object();
    Json lhs;               // number, or exact rational as "p/q"
    Json rhs;
    bool pass = false;
    double margin = 0.0;    // rhs - lhs for upper bounds, lhs - rhs for lower bounds

    Json to_json() const;
};

LemmaReport make_report(std::string lemma_id, Json params, const Rational& lhs,
                        const Rational& rhs, bool lower_bound_check);
LemmaReport make_report(std::string lemma_id, Json params, double lhs, double rhs,
                        bool lower_bound_check);
// Exact walk probability against a transcendental constant, compared at
// 50 significant digits.
LemmaReport make_report(std::string lemma_id, Json params, const Rational& lhs,
                        const Real50& rhs, bool lower_bound_check);

// Log-log scaling fit with a target exponent.
struct FitResult {
    std::string quantity;
    std::vector<std::pair<double, double>> points;  // (n, value)
    double slope = 0.0;
    double r2 = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    Json to_json() const;
    std::string to_csv() const;  // header n,value,fit_slope,fit_r2
};

FitResult fit_loglog(std::string quantity, std::vector<std::pair<double, double>> points,
                     double expected, double tolerance);

Json reports_to_json(const std::vector<LemmaReport>& reports);
std::string reports_to_csv(const std::vector<LemmaReport>& reports);
bool all_pass(const std::vector<LemmaReport>& reports);

}  // namespace sandlab

#endif
