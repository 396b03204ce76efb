#include "multfam/report.hpp"

#include <algorithm>
#include <sstream>

namespace multfam {

namespace {

// Quotes a CSV field when it carries a delimiter.
std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

Json rational_json(const Rational &q)
{
    Json j;
    j["num"] = q.get_num().get_str();
    j["den"] = q.get_den().get_str();
    j["decimal"] = to_decimal(q);
    return j;
}

Json rationals_json(const std::vector<Rational> &qs)
{
    Json a = Json::array();
    for (const auto &q : qs) {
        a.push_back(rational_json(q));
    }
    return a;
}

Json to_json(const ConvergenceReport &r)
{
    Json j;
    Json samples = Json::array();
    for (const auto &s : r.samples) {
        Json e;
        e["n"] = s.n;
        e["num"] = s.value.get_num().get_str();
        e["den"] = s.value.get_den().get_str();
        e["decimal"] = to_decimal(s.value);
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    j["window_sup"] = rational_json(r.window_sup);
    j["window_inf"] = rational_json(r.window_inf);
    j["estimate"] = rational_json(r.estimate);
    j["certificate"] = to_string(r.certificate);
    Json checks = Json::object();
    checks["monotone_along_multiples"] = r.monotone_along_multiples;
    checks["checked_pairs"] = r.checked_pairs;
    for (const auto &[name, ok] : r.checks) {
        checks[name] = ok;
    }
    j["checks"] = std::move(checks);
    j["note"] = r.note;
    return j;
}

Json to_json(const Claim &c)
{
    Json j;
    j["name"] = c.name;
    j["paper_ref"] = c.reference;
    j["expected"] = c.expected;
    if (c.computed) {
        j["computed_num"] = c.computed->get_num().get_str();
        j["computed_den"] = c.computed->get_den().get_str();
        j["computed_decimal"] = to_decimal(*c.computed);
    } else {
        j["computed_num"] = nullptr;
        j["computed_den"] = nullptr;
        j["computed_decimal"] = nullptr;
    }
    j["verdict"] = to_string(c.verdict);
    return j;
}

Json to_json(const LabReport &r)
{
    Json j;
    j["example"] = r.example;
    Json claims = Json::array();
    for (const auto &c : r.claims) {
        claims.push_back(to_json(c));
    }
    j["claims"] = std::move(claims);
    j["passed"] = r.passed();
    return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string samples_csv(const std::vector<Sample> &samples)
{
    std::ostringstream out;
    out << "n,value_decimal,value_fraction\n";
    for (const auto &s : samples) {
        out << s.n << ',' << to_decimal(s.value) << ',' << to_string(s.value) << '\n';
    }
    return out.str();
}

std::string claims_csv(const std::vector<Claim> &claims)
{
    std::ostringstream out;
    out << "name,expected,computed_fraction,computed_decimal,verdict\n";
    for (const auto &c : claims) {
        out << csv_field(c.name) << ',' << csv_field(c.expected) << ','
            << (c.computed ? to_string(*c.computed) : std::string()) << ','
            << (c.computed ? to_decimal(*c.computed) : std::string()) << ',' << to_string(c.verdict) << '\n';
    }
    return out.str();
}

std::string claims_table(const std::vector<Claim> &claims)
{
    std::size_t width = 0;
    for (const auto &c : claims) {
        width = std::max(width, c.name.size());
    }
    std::ostringstream out;
    for (const auto &c : claims) {
        out << "  [" << to_string(c.verdict) << "] " << c.name << std::string(width - c.name.size() + 2, ' ')
            << "expected " << c.expected;
        if (c.computed) {
            out << ", computed " << to_string(*c.computed);
            if (c.computed->get_den() != 1) {
                out << " (" << to_decimal(*c.computed) << ")";
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string report_table(const ConvergenceReport &r)
{
    std::ostringstream out;
    out << "estimate    " << to_string(r.estimate) << " (" << to_decimal(r.estimate) << ")\n"
        << "certificate " << to_string(r.certificate) << '\n'
        << "window      [" << to_decimal(r.window_inf) << ", " << to_decimal(r.window_sup) << "]\n"
        << "samples     " << r.samples.size() << ", monotone along multiples: "
        << (r.monotone_along_multiples ? "yes" : "no") << " (" << r.checked_pairs << " pairs)\n";
    for (const auto &[name, ok] : r.checks) {
        out << "check       " << name << ": " << (ok ? "ok" : "FAILED") << '\n';
    }
    if (!r.note.empty()) {
        out << "note        " << r.note << '\n';
    }
    return out.str();
}

} // namespace multfam
