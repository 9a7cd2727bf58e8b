#include "stpnet/dsl.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace stpnet {

namespace {

class ExprParser {
public:
    ExprParser(const std::string& s, int line, int col0) : s_(s), line_(line), col0_(col0) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    // expr := unary (op unary)?   -- at most one binary operator per level
    ExprPtr expr() {
        ExprPtr lhs = unary();
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '&' || s_[pos_] == '|' || s_[pos_] == '^')) {
            char op = s_[pos_++];
            ExprPtr rhs = unary();
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '&' || s_[pos_] == '|' || s_[pos_] == '^')) {
                fail("chained binary operators need parentheses (no precedence is defined)");
            }
            switch (op) {
                case '&': return Expr::conjunction(lhs, rhs);
                case '|': return Expr::disjunction(lhs, rhs);
                default: return Expr::exclusive_or(lhs, rhs);
            }
        }
        return lhs;
    }

    ExprPtr unary() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '!') {
            ++pos_;
            return Expr::negation(unary());
        }
        return primary();
    }

    ExprPtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected an expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            return Expr::constant(c == '1');
        }
        if (c == 'x') {
            ++pos_;
            return Expr::state_var(number("state variable index"));
        }
        if (c == 'u') {
            ++pos_;
            return Expr::control_var(number("control variable index"));
        }
        if (c == 'd') {
            // d(g)/d(u<k>)
            ++pos_;
            expect('(');
            expect('g');
            expect(')');
            expect('/');
            expect('d');
            expect('(');
            expect('u');
            int k = number("derivative control index");
            expect(')');
            return Expr::deriv_var(k);
        }
        fail(std::string("unexpected character '") + c + "'");
        return nullptr;
    }

    int number(const char* what) {
        skip_nothing();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        return std::stoi(s_.substr(start, pos_ - start));
    }

    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    void skip_nothing() {}

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(line_, col0_ + static_cast<int>(pos_) + 1, msg);
    }

    const std::string& s_;
    int line_, col0_;
    std::size_t pos_ = 0;
};

bool uses_deriv(const ExprPtr& e) {
    for (const VarRef& v : free_vars(e))
        if (v.kind == VarRef::Kind::Deriv) return true;
    return false;
}

}  // namespace

NetworkSpec parse_network(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<int> n, m;
    std::map<int, ExprPtr> frules, urules;
    ExprPtr g;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        line = line.substr(a, b - a + 1);
        int col0 = static_cast<int>(a);

        auto parse_header = [&](const std::string& key) -> std::optional<int> {
            if (line.rfind(key + " ", 0) != 0) return std::nullopt;
            try {
                return std::stoi(line.substr(key.size() + 1));
            } catch (const std::exception&) {
                throw parse_error(lineno, col0 + 1, "malformed " + key + " header");
            }
        };
        if (auto v = parse_header("states")) {
            n = *v;
            continue;
        }
        if (auto v = parse_header("controls")) {
            m = *v;
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error(lineno, col0 + 1, "expected a rule of the form lhs = expr");
        }
        std::string lhs = line.substr(0, eq);
        std::size_t le = lhs.find_last_not_of(" \t");
        lhs = lhs.substr(0, le == std::string::npos ? 0 : le + 1);
        std::string rhs = line.substr(eq + 1);

        ExprPtr e = ExprParser(rhs, lineno, col0 + static_cast<int>(eq) + 1).parse();

        if (lhs == "g") {
            if (g) throw parse_error(lineno, col0 + 1, "duplicate g definition");
            g = e;
        } else if (lhs.size() >= 3 && (lhs[0] == 'x' || lhs[0] == 'u') && lhs.back() == '\'') {
            int idx;
            try {
                idx = std::stoi(lhs.substr(1, lhs.size() - 2));
            } catch (const std::exception&) {
                throw parse_error(lineno, col0 + 1, "malformed rule left-hand side");
            }
            auto& rules = lhs[0] == 'x' ? frules : urules;
            if (rules.count(idx)) {
                throw parse_error(lineno, col0 + 1, "duplicate rule for " + lhs);
            }
            rules[idx] = e;
        } else {
            throw parse_error(lineno, col0 + 1, "unrecognized rule left-hand side '" + lhs + "'");
        }
    }

    if (!n) throw parse_error(lineno, 1, "missing 'states' header");
    if (!m) throw parse_error(lineno, 1, "missing 'controls' header");

    NetworkSpec spec;
    spec.n = *n;
    spec.m = *m;
    for (int i = 1; i <= spec.n; ++i) {
        auto it = frules.find(i);
        if (it == frules.end()) throw parse_error(lineno, 1, "missing rule for x" + std::to_string(i));
        spec.f.push_back(it->second);
    }
    if (static_cast<int>(frules.size()) != spec.n) {
        throw parse_error(lineno, 1, "state rule index outside 1..n");
    }
    for (int j = 1; j <= spec.m; ++j) {
        auto it = urules.find(j);
        if (it == urules.end()) throw parse_error(lineno, 1, "missing rule for u" + std::to_string(j));
        spec.g_update.push_back(it->second);
    }
    if (static_cast<int>(urules.size()) != spec.m) {
        throw parse_error(lineno, 1, "control rule index outside 1..m");
    }

    if (!g) {
        for (const auto& e : spec.f) {
            if (uses_deriv(e)) {
                throw parse_error(lineno, 1, "derivative atoms used but g is not defined");
            }
        }
        g = Expr::constant(false);
    }
    spec.g = g;

    try {
        spec.validate();
    } catch (const dimension_error& e) {
        throw parse_error(lineno, 1, e.what());
    }
    return spec;
}

std::string print_network(const NetworkSpec& spec) {
    std::ostringstream os;
    os << "states " << spec.n << "\n";
    os << "controls " << spec.m << "\n";
    for (int i = 1; i <= spec.n; ++i) {
        os << "x" << i << "' = " << to_string(spec.f[static_cast<std::size_t>(i) - 1]) << "\n";
    }
    for (int j = 1; j <= spec.m; ++j) {
        os << "u" << j << "' = " << to_string(spec.g_update[static_cast<std::size_t>(j) - 1]) << "\n";
    }
    os << "g = " << to_string(spec.g) << "\n";
    return os.str();
}

}  // namespace stpnet
