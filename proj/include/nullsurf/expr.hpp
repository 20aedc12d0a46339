// nullsurf: small arithmetic expression evaluator for custom
// parameterizations (u1.., +-*/^, elementary functions, pi/e)
#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nullsurf/errors.hpp"

namespace nullsurf {

// Parsed arithmetic expression over named variables. Supports + - * / ^
// (right associative), unary minus, parentheses, the constants pi and e, and
// sin cos tan asin acos atan atan2 sinh cosh tanh sqrt exp log abs pow
// min max. Parsing happens once; evaluation is allocation-free.
class Expression {
public:
    static Expression parse(const std::string& text) {
        Parser p(text);
        Expression e;
        e.text_ = text;
        e.root_ = p.parse_expr(e.nodes_);
        p.skip_ws();
        if (!p.done()) p.fail("unexpected trailing input");
        return e;
    }

    double eval(const std::map<std::string, double>& vars) const {
        return eval_node(root_, vars);
    }

    const std::string& text() const { return text_; }

private:
    enum class Op {
        constant, variable, add, sub, mul, divide, pow_op, neg,
        sin, cos, tan, asin, acos, atan, atan2, sinh, cosh, tanh,
        sqrt_fn, exp_fn, log_fn, abs_fn, min_fn, max_fn
    };

    struct Node {
        Op op;
        double value = 0.0;     // constant
        std::string name;       // variable
        int lhs = -1, rhs = -1;
    };

    std::vector<Node> nodes_;
    int root_ = -1;
    std::string text_;

    double eval_node(int idx, const std::map<std::string, double>& vars) const {
        const Node& n = nodes_[idx];
        switch (n.op) {
            case Op::constant: return n.value;
            case Op::variable: {
                auto it = vars.find(n.name);
                if (it == vars.end())
                    throw ConfigError("expression references unknown variable '" + n.name + "'");
                return it->second;
            }
            case Op::add: return eval_node(n.lhs, vars) + eval_node(n.rhs, vars);
            case Op::sub: return eval_node(n.lhs, vars) - eval_node(n.rhs, vars);
            case Op::mul: return eval_node(n.lhs, vars) * eval_node(n.rhs, vars);
            case Op::divide: return eval_node(n.lhs, vars) / eval_node(n.rhs, vars);
            case Op::pow_op: return std::pow(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
            case Op::neg: return -eval_node(n.lhs, vars);
            case Op::sin: return std::sin(eval_node(n.lhs, vars));
            case Op::cos: return std::cos(eval_node(n.lhs, vars));
            case Op::tan: return std::tan(eval_node(n.lhs, vars));
            case Op::asin: return std::asin(eval_node(n.lhs, vars));
            case Op::acos: return std::acos(eval_node(n.lhs, vars));
            case Op::atan: return std::atan(eval_node(n.lhs, vars));
            case Op::atan2: return std::atan2(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
            case Op::sinh: return std::sinh(eval_node(n.lhs, vars));
            case Op::cosh: return std::cosh(eval_node(n.lhs, vars));
            case Op::tanh: return std::tanh(eval_node(n.lhs, vars));
            case Op::sqrt_fn: return std::sqrt(eval_node(n.lhs, vars));
            case Op::exp_fn: return std::exp(eval_node(n.lhs, vars));
            case Op::log_fn: return std::log(eval_node(n.lhs, vars));
            case Op::abs_fn: return std::abs(eval_node(n.lhs, vars));
            case Op::min_fn: return std::min(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
            case Op::max_fn: return std::max(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
        }
        return 0.0;
    }

    struct Parser {
        const std::string& s;
        size_t pos = 0;
        explicit Parser(const std::string& text) : s(text) {}

        [[noreturn]] void fail(const std::string& why) const {
            throw ConfigError("expression error at position " + std::to_string(pos) + ": " + why +
                              " in '" + s + "'");
        }
        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool done() const { return pos >= s.size(); }
        bool accept(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        void expect(char c) {
            if (!accept(c)) fail(std::string("expected '") + c + "'");
        }

        int parse_expr(std::vector<Node>& out) {
            int lhs = parse_term(out);
            while (true) {
                if (accept('+')) lhs = binary(out, Op::add, lhs, parse_term(out));
                else if (accept('-')) lhs = binary(out, Op::sub, lhs, parse_term(out));
                else return lhs;
            }
        }
        int parse_term(std::vector<Node>& out) {
            int lhs = parse_unary(out);
            while (true) {
                if (accept('*')) lhs = binary(out, Op::mul, lhs, parse_unary(out));
                else if (accept('/')) lhs = binary(out, Op::divide, lhs, parse_unary(out));
                else return lhs;
            }
        }
        int parse_unary(std::vector<Node>& out) {
            if (accept('-')) {
                Node n;
                n.op = Op::neg;
                n.lhs = parse_unary(out);
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }
            if (accept('+')) return parse_unary(out);
            return parse_power(out);
        }
        int parse_power(std::vector<Node>& out) {
            int base = parse_primary(out);
            if (accept('^')) return binary(out, Op::pow_op, base, parse_unary(out));
            return base;
        }
        int parse_primary(std::vector<Node>& out) {
            skip_ws();
            if (done()) fail("unexpected end of input");
            char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                char* end = nullptr;
                double v = std::strtod(s.c_str() + pos, &end);
                if (end == s.c_str() + pos) fail("bad number");
                pos = end - s.c_str();
                Node n;
                n.op = Op::constant;
                n.value = v;
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }
            if (c == '(') {
                ++pos;
                int inner = parse_expr(out);
                expect(')');
                return inner;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t start = pos;
                while (pos < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                    ++pos;
                std::string name = s.substr(start, pos - start);
                skip_ws();
                if (pos < s.size() && s[pos] == '(') return parse_call(out, name);
                if (name == "pi") return constant(out, M_PI);
                if (name == "e") return constant(out, M_E);
                Node n;
                n.op = Op::variable;
                n.name = name;
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }
            fail("unexpected character");
        }
        int parse_call(std::vector<Node>& out, const std::string& name) {
            static const std::map<std::string, std::pair<Op, int>> table = {
                {"sin", {Op::sin, 1}},       {"cos", {Op::cos, 1}},
                {"tan", {Op::tan, 1}},       {"asin", {Op::asin, 1}},
                {"acos", {Op::acos, 1}},     {"atan", {Op::atan, 1}},
                {"atan2", {Op::atan2, 2}},   {"sinh", {Op::sinh, 1}},
                {"cosh", {Op::cosh, 1}},     {"tanh", {Op::tanh, 1}},
                {"sqrt", {Op::sqrt_fn, 1}},  {"exp", {Op::exp_fn, 1}},
                {"log", {Op::log_fn, 1}},    {"abs", {Op::abs_fn, 1}},
                {"min", {Op::min_fn, 2}},    {"max", {Op::max_fn, 2}},
                {"pow", {Op::pow_op, 2}},
            };
            auto it = table.find(name);
            if (it == table.end()) fail("unknown function '" + name + "'");
            expect('(');
            int a = parse_expr(out);
            int b = -1;
            if (it->second.second == 2) {
                expect(',');
                b = parse_expr(out);
            }
            expect(')');
            Node n;
            n.op = it->second.first;
            n.lhs = a;
            n.rhs = b;
            out.push_back(n);
            return static_cast<int>(out.size()) - 1;
        }
        int binary(std::vector<Node>& out, Op op, int lhs, int rhs) {
            Node n;
            n.op = op;
            n.lhs = lhs;
            n.rhs = rhs;
            out.push_back(n);
            return static_cast<int>(out.size()) - 1;
        }
        int constant(std::vector<Node>& out, double v) {
            Node n;
            n.op = Op::constant;
            n.value = v;
            out.push_back(n);
            return static_cast<int>(out.size()) - 1;
        }
    };
};

}  // namespace nullsurf
