// Copyright 2026 The nsbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsbasis/qasm.h"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "nsbasis/errors.h"

namespace nsbasis {

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(const std::string &s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; k++) {
            if (s[i] == '\n') {
                line++;
                col = 1;
            } else {
                col++;
            }
            i++;
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace((unsigned char)c)) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n') {
                advance(1);
            }
            continue;
        }
        const int l = line, cl = col;
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) {
                j++;
            }
            out.push_back({Tok::Ident, s.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (std::isdigit((unsigned char)c) || (c == '.' && i + 1 < s.size() && std::isdigit((unsigned char)s[i + 1]))) {
            size_t j = i;
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '.')) {
                j++;
            }
            if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
                size_t k = j + 1;
                if (k < s.size() && (s[k] == '+' || s[k] == '-')) {
                    k++;
                }
                if (k < s.size() && std::isdigit((unsigned char)s[k])) {
                    j = k;
                    while (j < s.size() && std::isdigit((unsigned char)s[j])) {
                        j++;
                    }
                }
            }
            out.push_back({Tok::Number, s.substr(i, j - i), l, cl});
            advance(j - i);
        } else if (c == '"') {
            size_t j = i + 1;
            while (j < s.size() && s[j] != '"' && s[j] != '\n') {
                j++;
            }
            if (j >= s.size() || s[j] != '"') {
                throw ParseError(l, cl, "closing quote");
            }
            out.push_back({Tok::String, s.substr(i + 1, j - i - 1), l, cl});
            advance(j + 1 - i);
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Symbol, "->", l, cl});
            advance(2);
        } else if (std::string("[](),;+-*/").find(c) != std::string::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw ParseError(l, cl, "a valid token");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
   public:
    explicit Parser(const std::string &text) : toks_(tokenize(text)) {
    }

    Circuit run() {
        if (peek().kind == Tok::Ident && peek().text == "OPENQASM") {
            next();
            expect_kind(Tok::Number, "version number");
            expect(";");
        }
        while (peek().kind != Tok::End) {
            statement();
        }
        if (reg_.empty()) {
            throw ParseError(peek().line, peek().column, "qreg declaration");
        }
        return circuit_;
    }

   private:
    const Token &peek() const {
        return toks_[pos_];
    }
    const Token &next() {
        return toks_[pos_++];
    }
    bool accept(const std::string &sym) {
        if (peek().kind == Tok::Symbol && peek().text == sym) {
            pos_++;
            return true;
        }
        return false;
    }
    const Token &expect(const std::string &sym) {
        if (peek().kind != Tok::Symbol || peek().text != sym) {
            throw ParseError(peek().line, peek().column, "'" + sym + "'");
        }
        return next();
    }
    const Token &expect_kind(Tok kind, const std::string &what) {
        if (peek().kind != kind) {
            throw ParseError(peek().line, peek().column, what);
        }
        return next();
    }
    int expect_int(const std::string &what) {
        const Token &t = expect_kind(Tok::Number, what);
        if (t.text.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(t.line, t.column, what);
        }
        return std::stoi(t.text);
    }

    void statement() {
        const Token &t = expect_kind(Tok::Ident, "statement");
        if (t.text == "include") {
            expect_kind(Tok::String, "file name");
            expect(";");
        } else if (t.text == "qreg") {
            if (!reg_.empty()) {
                throw ParseError(t.line, t.column, "a single quantum register");
            }
            reg_ = expect_kind(Tok::Ident, "register name").text;
            expect("[");
            circuit_.num_qubits = expect_int("register size");
            expect("]");
            expect(";");
        } else if (t.text == "creg") {
            expect_kind(Tok::Ident, "register name");
            expect("[");
            expect_int("register size");
            expect("]");
            expect(";");
        } else if (t.text == "barrier") {
            qubit_list();
            expect(";");
        } else if (t.text == "measure") {
            qubit_arg();
            expect("->");
            expect_kind(Tok::Ident, "classical register");
            if (accept("[")) {
                expect_int("bit index");
                expect("]");
            }
            expect(";");
        } else {
            gate(t);
        }
    }

    /// Returns the qubit index, or -1 for a whole-register reference.
    int qubit_arg() {
        const Token &t = expect_kind(Tok::Ident, "qubit argument");
        if (reg_.empty() || t.text != reg_) {
            throw ParseError(t.line, t.column, "declared quantum register");
        }
        if (!accept("[")) {
            return -1;
        }
        const Token &idx = peek();
        const int q = expect_int("qubit index");
        if (q >= circuit_.num_qubits) {
            throw ParseError(idx.line, idx.column, "qubit index below " + std::to_string(circuit_.num_qubits));
        }
        expect("]");
        return q;
    }

    std::vector<int> qubit_list() {
        std::vector<int> qs{qubit_arg()};
        while (accept(",")) {
            qs.push_back(qubit_arg());
        }
        return qs;
    }

    void gate(const Token &name) {
        if (!is_standard_gate(name.text)) {
            throw UnsupportedGate(name.text, name.line);
        }
        std::vector<double> params;
        if (accept("(")) {
            if (!accept(")")) {
                params.push_back(expr());
                while (accept(",")) {
                    params.push_back(expr());
                }
                expect(")");
            }
        }
        if ((int)params.size() != gate_param_count(name.text)) {
            throw ParseError(name.line, name.column,
                             std::to_string(gate_param_count(name.text)) + " parameters for " + name.text);
        }
        const Token &at = peek();
        std::vector<int> qs = qubit_list();
        expect(";");
        const int arity = gate_arity(name.text);
        if ((int)qs.size() != arity) {
            throw ParseError(at.line, at.column, std::to_string(arity) + " qubit arguments for " + name.text);
        }
        if (arity == 1 && qs[0] < 0) {
            for (int q = 0; q < circuit_.num_qubits; q++) {
                circuit_.add(name.text, {q}, params);
            }
            return;
        }
        for (int q : qs) {
            if (q < 0) {
                throw ParseError(at.line, at.column, "indexed qubit arguments for " + name.text);
            }
        }
        if (arity == 2 && qs[0] == qs[1]) {
            throw ParseError(at.line, at.column, "distinct qubit arguments");
        }
        circuit_.add(name.text, qs, params);
    }

    double expr() {
        double v = term();
        for (;;) {
            if (accept("+")) {
                v += term();
            } else if (accept("-")) {
                v -= term();
            } else {
                return v;
            }
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (accept("*")) {
                v *= factor();
            } else if (accept("/")) {
                v /= factor();
            } else {
                return v;
            }
        }
    }
    double factor() {
        if (accept("-")) {
            return -factor();
        }
        if (accept("+")) {
            return factor();
        }
        if (accept("(")) {
            double v = expr();
            expect(")");
            return v;
        }
        if (peek().kind == Tok::Number) {
            return std::stod(next().text);
        }
        if (peek().kind == Tok::Ident && peek().text == "pi") {
            next();
            return kPi;
        }
        throw ParseError(peek().line, peek().column, "expression");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    std::string reg_;
    Circuit circuit_;
};

}  // namespace

Circuit parse_qasm(const std::string &text) {
    return Parser(text).run();
}

std::string emit_qasm(const Circuit &c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.num_qubits << "];\n";
    char buf[64];
    for (const Gate &g : c.gates) {
        if (!is_standard_gate(g.name)) {
            throw UnsupportedGate(g.name);
        }
        os << g.name;
        if (!g.params.empty()) {
            os << "(";
            for (size_t k = 0; k < g.params.size(); k++) {
                std::snprintf(buf, sizeof buf, "%.17g", g.params[k]);
                os << (k ? "," : "") << buf;
            }
            os << ")";
        }
        for (size_t k = 0; k < g.qubits.size(); k++) {
            os << (k ? "," : " ") << "q[" << g.qubits[k] << "]";
        }
        os << ";\n";
    }
    return os.str();
}

}  // namespace nsbasis
