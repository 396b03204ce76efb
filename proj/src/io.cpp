#include "multfam/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace multfam {

ParseError::ParseError(const std::string &source, int line, int column, const std::string &what)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line),
      column_(column)
{
}

namespace {

enum class Tok { word, integer, fraction, string, lbracket, rbracket, comma, equals, end };

struct Token
{
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer
{
public:
    Lexer(std::string_view text, const std::string &source) : text_(text), source_(source) {}

    Token next()
    {
        skip();
        const int l = line_;
        const int c = col_;
        if (pos_ >= text_.size()) {
            return {Tok::end, "", l, c};
        }
        const char ch = text_[pos_];
        auto single = [&](Tok k) {
            advance();
            return Token{k, std::string(1, ch), l, c};
        };
        switch (ch) {
        case '[':
            return single(Tok::lbracket);
        case ']':
            return single(Tok::rbracket);
        case ',':
            return single(Tok::comma);
        case '=':
            return single(Tok::equals);
        default:
            break;
        }
        if (ch == '"') {
            advance();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
                s += text_[pos_];
                advance();
            }
            if (pos_ >= text_.size() || text_[pos_] != '"') {
                throw ParseError(source_, l, c, "unterminated string");
            }
            advance();
            return {Tok::string, s, l, c};
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
            std::string s(1, ch);
            advance();
            digits(s);
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                s += '/';
                advance();
                digits(s);
                return {Tok::fraction, s, l, c};
            }
            return {Tok::integer, s, l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string s;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_' || text_[pos_] == '-' || text_[pos_] == '.')) {
                s += text_[pos_];
                advance();
            }
            return {Tok::word, s, l, c};
        }
        throw ParseError(source_, l, c, std::string("unexpected character '") + ch + "'");
    }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip()
    {
        while (pos_ < text_.size()) {
            if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            } else {
                break;
            }
        }
    }

    void digits(std::string &s)
    {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            s += text_[pos_];
            advance();
        }
    }

    std::string_view text_;
    const std::string &source_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser
{
public:
    Parser(std::string_view text, const std::string &source) : lex_(text, source), source_(source) { tok_ = lex_.next(); }

    Value value()
    {
        Value v;
        v.line = tok_.line;
        v.column = tok_.column;
        v.text = tok_.text;
        switch (tok_.kind) {
        case Tok::integer:
            v.kind = Value::Kind::integer;
            break;
        case Tok::fraction:
            v.kind = Value::Kind::fraction;
            break;
        case Tok::string:
            v.kind = Value::Kind::string;
            break;
        case Tok::word:
            v.kind = Value::Kind::word;
            break;
        case Tok::lbracket: {
            v.kind = Value::Kind::list;
            v.text.clear();
            shift();
            while (tok_.kind != Tok::rbracket) {
                v.items.push_back(value());
                if (tok_.kind == Tok::comma) {
                    shift();
                } else if (tok_.kind != Tok::rbracket) {
                    error("expected ',' or ']'");
                }
            }
            shift();
            return v;
        }
        case Tok::end:
            error("unexpected end of input, expected a value");
        default:
            error("unexpected '" + tok_.text + "', expected a value");
        }
        shift();
        return v;
    }

    bool at_end() const { return tok_.kind == Tok::end; }
    const Token &current() const { return tok_; }

    void shift() { tok_ = lex_.next(); }

    [[noreturn]] void error(const std::string &what) const { throw ParseError(source_, tok_.line, tok_.column, what); }

private:
    Lexer lex_;
    const std::string &source_;
    Token tok_{Tok::end, "", 1, 1};
};

const char *kind_name(Value::Kind k)
{
    switch (k) {
    case Value::Kind::integer:
        return "an integer";
    case Value::Kind::fraction:
        return "a fraction";
    case Value::Kind::string:
        return "a string";
    case Value::Kind::word:
        return "a word";
    case Value::Kind::list:
        return "a list";
    }
    return "a value";
}

} // namespace

Document Document::parse(std::string_view text, std::string source)
{
    Document doc;
    doc.source_ = std::move(source);
    Parser p(text, doc.source_);
    while (!p.at_end()) {
        const Token key = p.current();
        if (key.kind != Tok::word) {
            p.error("expected a key");
        }
        p.shift();
        if (p.current().kind != Tok::equals) {
            p.error("expected '=' after '" + key.text + "'");
        }
        p.shift();
        if (doc.values_.count(key.text)) {
            throw ParseError(doc.source_, key.line, key.column, "duplicate key '" + key.text + "'");
        }
        doc.values_.emplace(key.text, p.value());
        doc.order_.push_back(key.text);
    }
    return doc;
}

Document Document::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

const Value &Document::at(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ParseError(source_, 1, 1, "missing key '" + key + "'");
    }
    return it->second;
}

void Document::fail(const std::string &key, const std::string &what) const { fail(at(key), what); }

void Document::fail(const Value &v, const std::string &what) const { throw ParseError(source_, v.line, v.column, what); }

std::int64_t Document::integer_of(const Value &v) const
{
    if (v.kind != Value::Kind::integer) {
        fail(v, std::string("expected an integer, found ") + kind_name(v.kind));
    }
    std::int64_t out = 0;
    const auto *b = v.text.data();
    const auto *e = b + v.text.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e) {
        fail(v, "integer out of range: " + v.text);
    }
    return out;
}

Rational Document::rational_of(const Value &v) const
{
    if (v.kind != Value::Kind::integer && v.kind != Value::Kind::fraction && v.kind != Value::Kind::string) {
        fail(v, std::string("expected a fraction, found ") + kind_name(v.kind));
    }
    try {
        return parse_rational(v.text);
    } catch (const std::exception &e) {
        fail(v, e.what());
    }
}

std::vector<ExponentVector> Document::vectors_of(const Value &v) const
{
    if (v.kind != Value::Kind::list) {
        fail(v, "expected a list of integer lists");
    }
    std::vector<ExponentVector> out;
    for (const auto &row : v.items) {
        if (row.kind != Value::Kind::list) {
            fail(row, "expected an integer list");
        }
        ExponentVector e;
        for (const auto &x : row.items) {
            e.push_back(integer_of(x));
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::int64_t Document::integer(const std::string &key) const { return integer_of(at(key)); }

std::string Document::word(const std::string &key) const
{
    const auto &v = at(key);
    if (v.kind != Value::Kind::word && v.kind != Value::Kind::string) {
        fail(v, std::string("expected a word, found ") + kind_name(v.kind));
    }
    return v.text;
}

Rational Document::rational(const std::string &key) const { return rational_of(at(key)); }

std::vector<std::int64_t> Document::integers(const std::string &key) const
{
    const auto &v = at(key);
    if (v.kind != Value::Kind::list) {
        fail(v, "expected an integer list");
    }
    std::vector<std::int64_t> out;
    for (const auto &x : v.items) {
        out.push_back(integer_of(x));
    }
    return out;
}

std::vector<ExponentVector> Document::vectors(const std::string &key) const { return vectors_of(at(key)); }

std::vector<Rational> Document::rationals(const std::string &key) const
{
    const auto &v = at(key);
    if (v.kind != Value::Kind::list) {
        fail(v, "expected a list of fractions");
    }
    std::vector<Rational> out;
    for (const auto &x : v.items) {
        out.push_back(rational_of(x));
    }
    return out;
}

std::vector<std::string> Document::strings(const std::string &key) const
{
    const auto &v = at(key);
    if (v.kind != Value::Kind::list) {
        fail(v, "expected a list of strings");
    }
    std::vector<std::string> out;
    for (const auto &x : v.items) {
        if (x.kind != Value::Kind::string && x.kind != Value::Kind::word) {
            fail(x, "expected a string");
        }
        out.push_back(x.text);
    }
    return out;
}

namespace {

AmbientPtr ambient_from(const Document &doc)
{
    const auto vars = doc.integer("vars");
    if (vars < 1 || vars > 16) {
        doc.fail("vars", "vars must be between 1 and 16");
    }
    if (!doc.has("quotient")) {
        return AmbientRing::polynomial(static_cast<int>(vars));
    }
    try {
        return AmbientRing::quotient(static_cast<int>(vars), doc.vectors("quotient"));
    } catch (const std::invalid_argument &e) {
        doc.fail("quotient", e.what());
    }
}

MonomialIdeal ideal_at(const Document &doc, const AmbientPtr &R, const std::string &key)
{
    try {
        return MonomialIdeal(R, doc.vectors(key));
    } catch (const std::invalid_argument &e) {
        doc.fail(key, e.what());
    }
}

SigmaSchedule schedule_from(const Document &doc)
{
    if (!doc.has("schedule")) {
        return SigmaSchedule::tower();
    }
    const auto &v = doc.at("schedule");
    if (v.kind == Value::Kind::list) {
        try {
            return SigmaSchedule::from_breakpoints(doc.integers("schedule"));
        } catch (const std::invalid_argument &e) {
            doc.fail(v, e.what());
        }
    }
    const auto w = doc.word("schedule");
    if (w == "builtin") {
        return SigmaSchedule::builtin();
    }
    if (w == "tower") {
        return SigmaSchedule::tower();
    }
    doc.fail(v, "unknown schedule '" + w + "' (builtin, tower or a breakpoint list)");
}

} // namespace

MonomialIdeal ideal_from(const Document &doc)
{
    const auto R = ambient_from(doc);
    return ideal_at(doc, R, doc.has("gens") ? "gens" : "ideal");
}

void audit_or_throw(const Family &F, std::int64_t N)
{
    const auto rep = audit_subadditive(F, N);
    if (!rep.passed) {
        throw InputError("audit failed for " + F->description() + ": I_" + std::to_string(rep.witness_m) + " I_" +
                         std::to_string(rep.witness_n) + " is not inside I_" +
                         std::to_string(rep.witness_m + rep.witness_n));
    }
}

Family family_from(const Document &doc)
{
    const auto kind = doc.word("kind");
    Family F;
    try {
        if (kind == "sigma") {
            F = sigma_family(schedule_from(doc));
        } else if (kind == "volex") {
            const auto d = doc.has("d") ? doc.integer("d") : 2;
            if (d < 1 || d > 8) {
                doc.fail("d", "d must be between 1 and 8");
            }
            F = volex_family(static_cast<int>(d), schedule_from(doc));
        } else {
            const auto R = ambient_from(doc);
            const auto main_key = doc.has("ideal") ? "ideal" : "gens";
            if (kind == "adic") {
                F = adic(ideal_at(doc, R, main_key));
            } else if (kind == "twist") {
                F = twist(adic(ideal_at(doc, R, main_key)), doc.rational("c"));
            } else if (kind == "product") {
                F = product(adic(ideal_at(doc, R, "left")), adic(ideal_at(doc, R, "right")));
            } else if (kind == "valuative") {
                F = valuative(R, doc.vectors("weights"), doc.rationals("targets"));
            } else if (kind == "table") {
                const auto &v = doc.at("levels");
                if (v.kind != Value::Kind::list || v.items.empty()) {
                    doc.fail(v, "levels must be a nonempty list of generator lists");
                }
                std::vector<MonomialIdeal> levels;
                for (const auto &lv : v.items) {
                    try {
                        levels.emplace_back(R, doc.vectors_of(lv));
                    } catch (const std::invalid_argument &e) {
                        doc.fail(lv, e.what());
                    }
                }
                const auto N = static_cast<std::int64_t>(levels.size());
                F = table_family(R, std::move(levels));
                audit_or_throw(F, N);
            } else {
                doc.fail("kind", "unknown family kind '" + kind + "'");
            }
        }
        if (doc.has("shift")) {
            F = shift(F, doc.integer("shift"));
        }
    } catch (const std::invalid_argument &e) {
        doc.fail("kind", e.what());
    } catch (const std::domain_error &e) {
        doc.fail("kind", e.what());
    }
    return F;
}

std::vector<WeightValuation> valuations_from(const Document &doc)
{
    std::vector<WeightValuation> out;
    if (!doc.has("valuations")) {
        return out;
    }
    for (auto &w : doc.vectors("valuations")) {
        try {
            out.emplace_back(std::move(w));
        } catch (const std::invalid_argument &e) {
            doc.fail("valuations", e.what());
        }
    }
    return out;
}

ClusterInput cluster_from(const Document &doc)
{
    ClusterInput in;
    const auto size = doc.integer("size");
    if (size < 1 || size > 64) {
        doc.fail("size", "size must be between 1 and 64");
    }
    std::vector<std::pair<int, int>> pairs;
    if (doc.has("prox")) {
        for (const auto &p : doc.vectors("prox")) {
            if (p.size() != 2) {
                doc.fail("prox", "each proximity is a pair [i,j]");
            }
            pairs.emplace_back(static_cast<int>(p[0]), static_cast<int>(p[1]));
        }
    }
    try {
        in.cluster = ProximityCluster::from_pairs(static_cast<int>(size), pairs);
    } catch (const std::invalid_argument &e) {
        doc.fail(doc.has("prox") ? "prox" : "size", e.what());
    }
    if (doc.has("targets")) {
        in.targets = doc.rationals("targets");
        if (static_cast<std::int64_t>(in.targets->size()) != size) {
            doc.fail("targets", "expected " + std::to_string(size) + " targets");
        }
        for (const auto &t : *in.targets) {
            if (t < 0) {
                doc.fail("targets", "targets must be nonnegative");
            }
        }
    }
    if (doc.has("values")) {
        in.values = doc.integers("values");
        if (static_cast<std::int64_t>(in.values->size()) != size) {
            doc.fail("values", "expected " + std::to_string(size) + " values");
        }
    }
    return in;
}

CurveFamilyPtr curve_family_from(const Document &doc, CurveRingPtr ring)
{
    const auto r = doc.integer("branches");
    if (r < 1 || r > 64) {
        doc.fail("branches", "branches must be between 1 and 64");
    }
    std::vector<std::string> names;
    if (doc.has("names")) {
        names = doc.strings("names");
    }
    if (ring && ring->branches() != r) {
        doc.fail("branches", "expected " + std::to_string(ring->branches()) + " branches to match the first family");
    }
    if (!ring) {
        try {
            ring = BranchedCurveRing::make(static_cast<int>(r), names);
        } catch (const std::invalid_argument &e) {
            doc.fail(doc.has("names") ? "names" : "branches", e.what());
        }
    }
    const auto kind = doc.has("kind") ? doc.word("kind") : std::string(doc.has("levels") ? "table" : "adic");
    if (kind == "adic") {
        try {
            return curve_adic(BranchIdeal(ring, doc.integers("orders")));
        } catch (const std::invalid_argument &e) {
            doc.fail("orders", e.what());
        }
    }
    if (kind == "table") {
        std::vector<BranchIdeal> levels;
        for (auto &o : doc.vectors("levels")) {
            try {
                levels.emplace_back(ring, std::move(o));
            } catch (const std::invalid_argument &e) {
                doc.fail("levels", e.what());
            }
        }
        const auto N = static_cast<std::int64_t>(levels.size());
        CurveFamilyPtr F;
        try {
            F = curve_table(ring, std::move(levels));
        } catch (const std::invalid_argument &e) {
            doc.fail("levels", e.what());
        }
        if (!curve_audit(F, N)) {
            throw InputError(doc.source() + ": curve table is not a graded family (orders not subadditive)");
        }
        return F;
    }
    doc.fail("kind", "unknown curve family kind '" + kind + "' (adic or table)");
}

} // namespace multfam
