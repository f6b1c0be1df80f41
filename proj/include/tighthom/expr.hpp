#pragma once

// Small expression language naming the library's constructions, so commands
// can take an algebra, homomorphism or shape as a single string:
//
//   EXPR  :=  NAME '(' ARGS ')'  |  NAME  |  INTEGER
//   ARGS  :=  ARG (',' ARG)*     ARG := NAME '=' EXPR | EXPR
//
// Whitespace is insignificant and '#' starts a line comment.  Constructors:
//
//   alg(SU,p,q) | alg(SP,n) | alg(SOSTAR,n) | alg(SO2N,n) | alg(SO2N,2,n)
//   std(SP_TO_SU,n) | std(SOSTAR_TO_SU,n) | std(SU_TO_SP,m,n) | std(SU_TO_SOSTAR,m,n)
//   so2incl(k,n)            corner inclusion so(2,k) -> so(2,n)
//   rho(n)                  irreducible su(1,1) -> sp(2n,R)
//   spin(p[,EVEN|ODD])      spin representation of so(2,p)
//   disc(A[,s1,...,sk])     diagonal disc with one sign (+1/-1) per factor
//   polydisc(A)             maximal polydisc su(1,1)^rk -> A
//   dsum(x,y[,same_source=BOOL])   block-diagonal sum (algebras or maps)
//   comp(outer,inner)       composition of homomorphisms
//   merge(h[,A])            merge a direct-sum target into one matrix model
//   shape(A,entry(KIND,a[,b][,mult=g]),...)   tight-embedding shape literal
//       with KIND in {rho, su_pp, sp, so4, so2, su_pq, so_odd}
//
// Every expression elaborates to an algebra descriptor, a homomorphism or a
// shape record; all failures carry a 1-based line:col position.

#include <cctype>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tighthom/algebra.hpp"
#include "tighthom/catalog.hpp"
#include "tighthom/homomorphism.hpp"
#include "tighthom/shapes.hpp"

namespace tighthom {

/// Parse or elaboration failure with a source position.
class SpecError : public std::runtime_error {
  public:
    SpecError(int line, int col, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          line_(line),
          col_(col),
          message_(message) {}
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& message() const { return message_; }

  private:
    int line_;
    int col_;
    std::string message_;
};

struct SpecExpression {
    enum class Kind { CALL, INT, IDENT, KEYVAL };
    Kind kind = Kind::CALL;
    std::string name;                  // CALL: constructor; IDENT: token; KEYVAL: key
    long value = 0;                    // INT payload
    std::vector<SpecExpression> args;  // CALL arguments; KEYVAL: the single value
    int line = 1, col = 1;

    /// Canonical text: minimal spelling that parses back to this tree.
    std::string print() const {
        switch (kind) {
            case Kind::INT: return std::to_string(value);
            case Kind::IDENT: return name;
            case Kind::KEYVAL: return name + "=" + args.at(0).print();
            case Kind::CALL: {
                std::string s = name + "(";
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (i) s += ",";
                    s += args[i].print();
                }
                return s + ")";
            }
        }
        throw std::logic_error("SpecExpression: bad kind");
    }

    friend bool operator==(const SpecExpression& a, const SpecExpression& b) {
        return a.kind == b.kind && a.name == b.name && a.value == b.value && a.args == b.args;
    }
    friend bool operator!=(const SpecExpression& a, const SpecExpression& b) { return !(a == b); }
};

inline std::string print_spec(const SpecExpression& e) { return e.print(); }

namespace expr_detail {

struct Token {
    enum class Type { IDENT, INT, LPAREN, RPAREN, COMMA, EQUALS, END };
    Type type = Type::END;
    std::string text;
    long value = 0;
    int line = 1, col = 1;
};

inline std::string describe(const Token& t) {
    switch (t.type) {
        case Token::Type::IDENT: return "identifier '" + t.text + "'";
        case Token::Type::INT: return "integer " + std::to_string(t.value);
        case Token::Type::LPAREN: return "'('";
        case Token::Type::RPAREN: return "')'";
        case Token::Type::COMMA: return "','";
        case Token::Type::EQUALS: return "'='";
        case Token::Type::END: return "end of input";
    }
    throw std::logic_error("Token: bad type");
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_blank();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) return t;  // END
        const char c = text_[pos_];
        switch (c) {
            case '(': advance(); t.type = Token::Type::LPAREN; return t;
            case ')': advance(); t.type = Token::Type::RPAREN; return t;
            case ',': advance(); t.type = Token::Type::COMMA; return t;
            case '=': advance(); t.type = Token::Type::EQUALS; return t;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                s += text_[pos_];
                advance();
            }
            t.type = Token::Type::IDENT;
            t.text = s;
            return t;
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::string s;
            if (c == '+' || c == '-') {
                s += c;
                advance();
                if (pos_ >= text_.size() ||
                    !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    throw SpecError(t.line, t.col, "expected digits after sign");
            }
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                s += text_[pos_];
                advance();
            }
            t.type = Token::Type::INT;
            t.text = s;
            t.value = std::stol(s);
            return t;
        }
        throw SpecError(line_, col_, std::string("unexpected character '") + c + "'");
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank() {
        for (;;) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                advance();
            if (pos_ < text_.size() && text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) { cur_ = lex_.next(); }

    SpecExpression parse_top() {
        SpecExpression e = parse_expr();
        if (cur_.type != Token::Type::END)
            throw SpecError(cur_.line, cur_.col, "unexpected trailing " + describe(cur_));
        return e;
    }

  private:
    void next() { cur_ = lex_.next(); }

    SpecExpression parse_expr() {
        if (cur_.type == Token::Type::INT) {
            SpecExpression e;
            e.kind = SpecExpression::Kind::INT;
            e.value = cur_.value;
            e.line = cur_.line;
            e.col = cur_.col;
            next();
            return e;
        }
        if (cur_.type == Token::Type::IDENT) {
            Token name = cur_;
            next();
            return parse_after_ident(name);
        }
        throw SpecError(cur_.line, cur_.col, "expected an expression, got " + describe(cur_));
    }

    SpecExpression parse_after_ident(const Token& name) {
        SpecExpression e;
        e.name = name.text;
        e.line = name.line;
        e.col = name.col;
        if (cur_.type != Token::Type::LPAREN) {
            e.kind = SpecExpression::Kind::IDENT;
            return e;
        }
        e.kind = SpecExpression::Kind::CALL;
        next();  // '('
        if (cur_.type != Token::Type::RPAREN) {
            e.args.push_back(parse_arg());
            while (cur_.type == Token::Type::COMMA) {
                next();
                e.args.push_back(parse_arg());
            }
        }
        if (cur_.type != Token::Type::RPAREN)
            throw SpecError(cur_.line, cur_.col, "expected ')' or ',', got " + describe(cur_));
        next();  // ')'
        return e;
    }

    SpecExpression parse_arg() {
        if (cur_.type == Token::Type::IDENT) {
            Token name = cur_;
            next();
            if (cur_.type == Token::Type::EQUALS) {
                next();
                SpecExpression kv;
                kv.kind = SpecExpression::Kind::KEYVAL;
                kv.name = name.text;
                kv.line = name.line;
                kv.col = name.col;
                kv.args.push_back(parse_expr());
                return kv;
            }
            return parse_after_ident(name);
        }
        return parse_expr();
    }

    Lexer lex_;
    Token cur_;
};

}  // namespace expr_detail

/// Parses one expression; throws SpecError with line:col on failure.
inline SpecExpression parse_spec(const std::string& text) {
    return expr_detail::Parser(text).parse_top();
}

// ===================================================================
// Elaboration
// ===================================================================

using ElabValue = std::variant<AlgebraDescriptor, Homomorphism, ShapeRecord>;

inline const char* elab_type_name(const ElabValue& v) {
    if (std::holds_alternative<AlgebraDescriptor>(v)) return "algebra";
    if (std::holds_alternative<Homomorphism>(v)) return "homomorphism";
    return "shape";
}

inline ElabValue elaborate(const SpecExpression& e);

namespace expr_detail {

[[noreturn]] inline void fail(const SpecExpression& e, const std::string& msg) {
    throw SpecError(e.line, e.col, msg);
}

/// Runs a library constructor, turning its exceptions into positioned errors.
template <typename F>
auto lib_call(const SpecExpression& at, F&& f) {
    try {
        return f();
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw SpecError(at.line, at.col, ex.what());
    } catch (const std::domain_error& ex) {
        throw SpecError(at.line, at.col, ex.what());
    }
}

inline long expect_int(const SpecExpression& e, const std::string& what) {
    if (e.kind != SpecExpression::Kind::INT)
        fail(e, "expected an integer (" + what + "), got " + e.print());
    return e.value;
}

inline std::string expect_ident(const SpecExpression& e, const std::string& what) {
    if (e.kind != SpecExpression::Kind::IDENT)
        fail(e, "expected " + what + ", got " + e.print());
    return e.name;
}

inline bool expect_bool(const SpecExpression& e, const std::string& what) {
    if (e.kind == SpecExpression::Kind::IDENT) {
        if (e.name == "true") return true;
        if (e.name == "false") return false;
    }
    fail(e, "expected true or false (" + what + "), got " + e.print());
}

struct SplitArgs {
    std::vector<const SpecExpression*> positional;
    std::vector<const SpecExpression*> keywords;
};

inline SplitArgs split_args(const SpecExpression& call) {
    SplitArgs s;
    for (const auto& a : call.args) {
        if (a.kind == SpecExpression::Kind::KEYVAL)
            s.keywords.push_back(&a);
        else
            s.positional.push_back(&a);
    }
    return s;
}

[[noreturn]] inline void usage(const SpecExpression& call, const std::string& forms) {
    fail(call, "wrong arguments for " + call.name + "; usage: " + forms);
}

inline AlgebraDescriptor want_algebra(const SpecExpression& at, ElabValue v) {
    if (auto* a = std::get_if<AlgebraDescriptor>(&v)) return std::move(*a);
    fail(at, std::string("expected an algebra here, got a ") + elab_type_name(v));
}

inline Homomorphism want_homomorphism(const SpecExpression& at, ElabValue v) {
    if (auto* h = std::get_if<Homomorphism>(&v)) return std::move(*h);
    fail(at, std::string("expected a homomorphism here, got a ") + elab_type_name(v));
}

inline ElabValue elaborate_alg(const SpecExpression& e) {
    if (e.args.empty()) usage(e, "alg(SU,p,q) | alg(SP,n) | alg(SOSTAR,n) | alg(SO2N,[2,]n)");
    const std::string fam = expect_ident(e.args[0], "a family (SU, SP, SOSTAR or SO2N)");
    auto ints_from = [&](std::size_t lo, std::size_t hi) {
        if (e.args.size() - 1 < lo || e.args.size() - 1 > hi)
            usage(e, "alg(SU,p,q) | alg(SP,n) | alg(SOSTAR,n) | alg(SO2N,[2,]n)");
        std::vector<long> v;
        for (std::size_t i = 1; i < e.args.size(); ++i)
            v.push_back(expect_int(e.args[i], "algebra parameter"));
        return v;
    };
    if (fam == "SU") {
        auto v = ints_from(2, 2);
        return lib_call(e, [&] { return su_algebra(v[0], v[1]); });
    }
    if (fam == "SP") {
        auto v = ints_from(1, 1);
        return lib_call(e, [&] { return sp_algebra(v[0]); });
    }
    if (fam == "SOSTAR") {
        auto v = ints_from(1, 1);
        return lib_call(e, [&] { return sostar_algebra(v[0]); });
    }
    if (fam == "SO2N") {
        auto v = ints_from(1, 2);
        if (v.size() == 2 && v[0] != 2)
            fail(e.args[1], "so(2,n) parameters are (n) or (2,n); the first entry must be 2");
        return lib_call(e, [&] { return so2_algebra(v.back()); });
    }
    fail(e.args[0], "unknown family '" + fam + "' (expected SU, SP, SOSTAR or SO2N)");
}

inline ElabValue elaborate_std(const SpecExpression& e) {
    if (e.args.empty())
        usage(e, "std(SP_TO_SU,n) | std(SOSTAR_TO_SU,n) | std(SU_TO_SP,m,n) | "
                 "std(SU_TO_SOSTAR,m,n)");
    const std::string kind = expect_ident(e.args[0], "an inclusion kind");
    StdInclusionKind k;
    std::size_t arity;
    if (kind == "SP_TO_SU") {
        k = StdInclusionKind::SP_TO_SU;
        arity = 1;
    } else if (kind == "SOSTAR_TO_SU") {
        k = StdInclusionKind::SOSTAR_TO_SU;
        arity = 1;
    } else if (kind == "SU_TO_SP") {
        k = StdInclusionKind::SU_TO_SP;
        arity = 2;
    } else if (kind == "SU_TO_SOSTAR") {
        k = StdInclusionKind::SU_TO_SOSTAR;
        arity = 2;
    } else {
        fail(e.args[0], "unknown inclusion kind '" + kind +
                            "' (expected SP_TO_SU, SOSTAR_TO_SU, SU_TO_SP or SU_TO_SOSTAR)");
    }
    if (e.args.size() != 1 + arity)
        usage(e, kind + (arity == 1 ? "(n)" : "(m,n)") + " takes " +
                     std::to_string(arity) + " integer parameter(s)");
    const long m = expect_int(e.args[1], "inclusion parameter");
    const long n = (arity == 2) ? expect_int(e.args[2], "inclusion parameter") : 0;
    return lib_call(e, [&] { return std_inclusion(k, m, n); });
}

inline ElabValue elaborate_shape_literal(const SpecExpression& e) {
    if (e.args.size() < 2) usage(e, "shape(target, entry(KIND,a[,b][,mult=g]), ...)");
    AlgebraDescriptor target = want_algebra(e.args[0], elaborate(e.args[0]));
    std::vector<ShapeEntry> entries;
    for (std::size_t i = 1; i < e.args.size(); ++i) {
        const SpecExpression& en = e.args[i];
        if (en.kind != SpecExpression::Kind::CALL || en.name != "entry")
            fail(en, "expected entry(KIND,a[,b][,mult=g]), got " + en.print());
        auto s = split_args(en);
        if (s.positional.empty())
            usage(en, "entry(KIND,a[,b][,mult=g]) with KIND in "
                      "{rho, su_pp, sp, so4, so2, su_pq, so_odd}");
        const std::string kind = expect_ident(*s.positional[0], "an entry kind");
        ShapeEntry entry;
        std::size_t params;
        if (kind == "rho") {
            entry.kind = ShapeKind::SU11_VIA_RHO;
            params = 1;
        } else if (kind == "su_pp") {
            entry.kind = ShapeKind::SU_PP;
            params = 1;
        } else if (kind == "sp") {
            entry.kind = ShapeKind::SP;
            params = 1;
        } else if (kind == "so4") {
            entry.kind = ShapeKind::SOSTAR4;
            params = 1;
        } else if (kind == "so2") {
            entry.kind = ShapeKind::SO2;
            params = 1;
        } else if (kind == "su_pq") {
            entry.kind = ShapeKind::SU_PQ;
            params = 2;
        } else if (kind == "so_odd") {
            entry.kind = ShapeKind::SOSTAR_ODD;
            params = 1;
        } else {
            fail(*s.positional[0], "unknown entry kind '" + kind +
                                       "' (expected rho, su_pp, sp, so4, so2, su_pq or so_odd)");
        }
        if (s.positional.size() != 1 + params)
            usage(en, "entry(" + kind + (params == 1 ? ",a" : ",p,q") + "[,mult=g])");
        entry.a = expect_int(*s.positional[1], "entry parameter");
        if (params == 2) entry.b = expect_int(*s.positional[2], "entry parameter");
        for (const auto* kv : s.keywords) {
            if (kv->name == "mult")
                entry.multiplicity = expect_int(kv->args[0], "multiplicity");
            else
                fail(*kv, "unknown keyword '" + kv->name + "' (entry accepts mult=g)");
        }
        entries.push_back(entry);
    }
    return lib_call(e, [&] { return make_shape(target, entries); });
}

}  // namespace expr_detail

/// Elaborates a parsed expression to an algebra, homomorphism or shape.
/// Throws SpecError (with the offending node's position) on type or
/// parameter errors.
inline ElabValue elaborate(const SpecExpression& e) {
    using namespace expr_detail;
    if (e.kind != SpecExpression::Kind::CALL)
        fail(e, "expected a constructor call, got " + e.print());
    if (e.name == "alg") return elaborate_alg(e);
    if (e.name == "std") return elaborate_std(e);
    if (e.name == "so2incl") {
        if (e.args.size() != 2) usage(e, "so2incl(k,n) with 1 <= k <= n");
        const long k = expect_int(e.args[0], "source parameter k");
        const long n = expect_int(e.args[1], "target parameter n");
        return lib_call(e, [&] { return so2_inclusion(k, n); });
    }
    if (e.name == "rho") {
        if (e.args.size() != 1) usage(e, "rho(n) with n >= 1");
        const long n = expect_int(e.args[0], "weight parameter n");
        if (n < 1) fail(e.args[0], "rho(n) requires n >= 1");
        return lib_call(e, [&] { return rho_odd(n); });
    }
    if (e.name == "spin") {
        if (e.args.empty() || e.args.size() > 2) usage(e, "spin(p[,EVEN|ODD]) with p >= 3");
        const long p = expect_int(e.args[0], "orthogonal parameter p");
        HalfSpin hs = HalfSpin::EVEN;
        if (e.args.size() == 2) {
            const std::string c = expect_ident(e.args[1], "a chirality (EVEN or ODD)");
            if (c == "EVEN")
                hs = HalfSpin::EVEN;
            else if (c == "ODD")
                hs = HalfSpin::ODD;
            else
                fail(e.args[1], "unknown chirality '" + c + "' (expected EVEN or ODD)");
        }
        return lib_call(e, [&] { return spin(p, hs); });
    }
    if (e.name == "disc") {
        if (e.args.empty()) usage(e, "disc(algebra[,s1,...,sk]) with signs +1/-1");
        AlgebraDescriptor a = want_algebra(e.args[0], elaborate(e.args[0]));
        std::vector<int> signs;
        for (std::size_t i = 1; i < e.args.size(); ++i) {
            const long s = expect_int(e.args[i], "a sign");
            if (s != 1 && s != -1) fail(e.args[i], "disc signs must be +1 or -1");
            signs.push_back(static_cast<int>(s));
        }
        if (signs.empty()) signs.assign(a.factors.size(), 1);
        if (signs.size() != a.factors.size())
            fail(e, "disc needs one sign per factor of " + a.str() + " (" +
                        std::to_string(a.factors.size()) + " factor(s), got " +
                        std::to_string(signs.size()) + ")");
        return lib_call(e, [&] { return disc(a, signs); });
    }
    if (e.name == "polydisc") {
        if (e.args.size() != 1) usage(e, "polydisc(algebra)");
        AlgebraDescriptor a = want_algebra(e.args[0], elaborate(e.args[0]));
        return lib_call(e, [&] { return polydisc(a); });
    }
    if (e.name == "dsum") {
        auto s = split_args(e);
        if (s.positional.size() != 2) usage(e, "dsum(x,y[,same_source=BOOL])");
        bool same_source = false, have_ss = false;
        for (const auto* kv : s.keywords) {
            if (kv->name == "same_source") {
                same_source = expect_bool(kv->args[0], "same_source");
                have_ss = true;
            } else {
                fail(*kv, "unknown keyword '" + kv->name + "' (dsum accepts same_source=BOOL)");
            }
        }
        ElabValue v1 = elaborate(*s.positional[0]);
        ElabValue v2 = elaborate(*s.positional[1]);
        const bool alg1 = std::holds_alternative<AlgebraDescriptor>(v1);
        const bool alg2 = std::holds_alternative<AlgebraDescriptor>(v2);
        if (alg1 && alg2) {
            if (have_ss) fail(e, "same_source only applies to homomorphism arguments");
            return direct_sum(std::get<AlgebraDescriptor>(v1), std::get<AlgebraDescriptor>(v2));
        }
        Homomorphism h1 = want_homomorphism(*s.positional[0], std::move(v1));
        Homomorphism h2 = want_homomorphism(*s.positional[1], std::move(v2));
        return lib_call(e, [&] { return direct_sum(h1, h2, same_source); });
    }
    if (e.name == "comp") {
        if (e.args.size() != 2) usage(e, "comp(outer,inner)");
        Homomorphism outer = want_homomorphism(e.args[0], elaborate(e.args[0]));
        Homomorphism inner = want_homomorphism(e.args[1], elaborate(e.args[1]));
        return lib_call(e, [&] { return compose(outer, inner); });
    }
    if (e.name == "merge") {
        if (e.args.empty() || e.args.size() > 2) usage(e, "merge(hom[,target_algebra])");
        Homomorphism h = want_homomorphism(e.args[0], elaborate(e.args[0]));
        std::optional<AlgebraDescriptor> override_target;
        if (e.args.size() == 2)
            override_target = want_algebra(e.args[1], elaborate(e.args[1]));
        return lib_call(e, [&] { return merge_factors(h, override_target); });
    }
    if (e.name == "shape") return elaborate_shape_literal(e);
    fail(e, "unknown constructor '" + e.name + "'");
}

inline AlgebraDescriptor elaborate_algebra(const SpecExpression& e) {
    return expr_detail::want_algebra(e, elaborate(e));
}

inline Homomorphism elaborate_homomorphism(const SpecExpression& e) {
    return expr_detail::want_homomorphism(e, elaborate(e));
}

inline ShapeRecord elaborate_shape(const SpecExpression& e) {
    ElabValue v = elaborate(e);
    if (auto* s = std::get_if<ShapeRecord>(&v)) return std::move(*s);
    expr_detail::fail(e, std::string("expected a shape here, got a ") + elab_type_name(v));
}

}  // namespace tighthom
