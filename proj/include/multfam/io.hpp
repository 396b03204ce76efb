#ifndef MULTFAM_IO_HPP
#define MULTFAM_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multfam/blowups.hpp"
#include "multfam/curves.hpp"
#include "multfam/family.hpp"
#include "multfam/monomial_ideal.hpp"
#include "multfam/valuations.hpp"

namespace multfam {

/// Bad input: unreadable file, grammar error, invalid object, failed audit.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError
{
public:
    ParseError(const std::string &source, int line, int column, const std::string &what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// `key = value` documents. Values are integers, fractions (3/2), quoted
/// strings, bare words, or bracketed lists of values. `#` starts a comment.
struct Value
{
    enum class Kind { integer, fraction, string, word, list };

    Kind kind = Kind::integer;
    std::string text;
    std::vector<Value> items;
    int line = 0;
    int column = 0;
};

class Document
{
public:
    static Document parse(std::string_view text, std::string source = "<input>");
    static Document load(const std::string &path);

    bool has(const std::string &key) const { return values_.count(key) != 0; }
    const Value &at(const std::string &key) const;
    const std::vector<std::string> &keys() const { return order_; }
    const std::string &source() const { return source_; }

    std::int64_t integer(const std::string &key) const;
    std::string word(const std::string &key) const;
    Rational rational(const std::string &key) const;
    std::vector<std::int64_t> integers(const std::string &key) const;
    std::vector<ExponentVector> vectors(const std::string &key) const;
    std::vector<Rational> rationals(const std::string &key) const;
    std::vector<std::string> strings(const std::string &key) const;

    /// ParseError located at the value of `key`.
    [[noreturn]] void fail(const std::string &key, const std::string &what) const;
    [[noreturn]] void fail(const Value &v, const std::string &what) const;

    std::int64_t integer_of(const Value &v) const;
    Rational rational_of(const Value &v) const;
    std::vector<ExponentVector> vectors_of(const Value &v) const;

private:
    std::string source_;
    std::map<std::string, Value> values_;
    std::vector<std::string> order_;
};

/// `vars = d`, optional `quotient = [[...]]`, `gens = [[...], ...]`.
MonomialIdeal ideal_from(const Document &doc);

/// `kind = adic|twist|product|valuative|sigma|volex|table` with keys `ideal`,
/// `c`, `left`/`right`, `weights`/`targets`, `schedule`, `levels`, and an
/// optional `shift = s`. Table families are audited on load.
Family family_from(const Document &doc);

/// `valuations = [[3,2], ...]` when present.
std::vector<WeightValuation> valuations_from(const Document &doc);

struct ClusterInput
{
    ClusterPtr cluster;
    std::optional<std::vector<Rational>> targets;
    std::optional<std::vector<std::int64_t>> values;
};

/// `size = l`, `prox = [[i,j], ...]`, optional `targets = ["3/2", ...]` and
/// `values = [...]`.
ClusterInput cluster_from(const Document &doc);

/// `branches = r`, optional `names`, then `kind = adic` with `orders = [...]`
/// or `kind = table` with `levels = [[...], ...]`.
CurveFamilyPtr curve_family_from(const Document &doc, CurveRingPtr ring = nullptr);

/// Throws InputError with the witness pair when I_m I_n ⊄ I_{m+n}.
void audit_or_throw(const Family &F, std::int64_t N);

} // namespace multfam

#endif
