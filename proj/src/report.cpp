#include "sandlab/report.hpp"

#include <cmath>
#include <sstream>

namespace sandlab {

namespace {

double margin_of(double lhs, double rhs, bool lower_bound_check) {
    return lower_bound_check ? lhs - rhs : rhs - lhs;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_number_field(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

Json LemmaReport::to_json() const {
    Json j;
    j["lemma_id"] = lemma_id;
    j["params"] = params;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["pass"] = pass;
    j["margin"] = margin;
    return j;
}

LemmaReport make_report(std::string lemma_id, Json params, const Rational& lhs,
                        const Rational& rhs, bool lower_bound_check) {
    LemmaReport r;
    r.lemma_id = std::move(lemma_id);
    r.params = std::move(params);
    r.lhs = rational_string(lhs);
    r.rhs = rational_string(rhs);
    r.pass = lower_bound_check ? (lhs >= rhs) : (lhs <= rhs);
    r.margin = margin_of(to_double(lhs), to_double(rhs), lower_bound_check);
    return r;
}

LemmaReport make_report(std::string lemma_id, Json params, double lhs, double rhs,
                        bool lower_bound_check) {
    LemmaReport r;
    r.lemma_id = std::move(lemma_id);
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.pass = lower_bound_check ? (lhs >= rhs) : (lhs <= rhs);
    r.margin = margin_of(lhs, rhs, lower_bound_check);
    return r;
}

LemmaReport make_report(std::string lemma_id, Json params, const Rational& lhs,
                        const Real50& rhs, bool lower_bound_check) {
    LemmaReport r;
    r.lemma_id = std::move(lemma_id);
    r.params = std::move(params);
    const Real50 l = to_real50(lhs);
    r.lhs = rational_string(lhs);
    r.rhs = rhs.convert_to<double>();
    r.pass = lower_bound_check ? (l >= rhs) : (l <= rhs);
    r.margin = margin_of(l.convert_to<double>(), rhs.convert_to<double>(), lower_bound_check);
    return r;
}

Json FitResult::to_json() const {
    Json j;
    j["quantity"] = quantity;
    Json pts = Json::array();
    for (const auto& [n, v] : points) pts.push_back(Json{{"n", n}, {"value", v}});
    j["points"] = pts;
    j["slope"] = slope;
    j["r2"] = r2;
    j["expected"] = expected;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    return j;
}

std::string FitResult::to_csv() const {
    std::ostringstream os;
    os << "n,value,fit_slope,fit_r2\n";
    for (const auto& [n, v] : points) {
        os << n << ",";
        os.precision(17);
        os << v << "," << slope << "," << r2 << "\n";
    }
    return os.str();
}

FitResult fit_loglog(std::string quantity, std::vector<std::pair<double, double>> points,
                     double expected, double tolerance) {
    FitResult f;
    f.quantity = std::move(quantity);
    f.points = std::move(points);
    f.expected = expected;
    f.tolerance = tolerance;
    std::vector<double> x, y;
    for (const auto& [n, v] : f.points) {
        if (n <= 0 || v <= 0)
            throw std::invalid_argument("fit_loglog needs positive points");
        x.push_back(std::log(n));
        y.push_back(std::log(v));
    }
    const LineFit line = fit_line(x, y);
    f.slope = line.slope;
    f.r2 = line.r2;
    f.pass = std::abs(f.slope - f.expected) <= f.tolerance && f.r2 >= 0.98;
    return f;
}

Json reports_to_json(const std::vector<LemmaReport>& reports) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    return arr;
}

std::string reports_to_csv(const std::vector<LemmaReport>& reports) {
    std::ostringstream os;
    os << "lemma_id,param_json,lhs,rhs,pass,margin\n";
    for (const auto& r : reports) {
        os << r.lemma_id << "," << csv_escape(r.params.dump()) << ","
           << csv_escape(json_number_field(r.lhs)) << ","
           << csv_escape(json_number_field(r.rhs)) << "," << (r.pass ? "true" : "false") << ",";
        os.precision(17);
        os << r.margin << "\n";
    }
    return os.str();
}

bool all_pass(const std::vector<LemmaReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

}  // namespace sandlab
