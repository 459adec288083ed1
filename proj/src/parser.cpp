#include "hjq/parser.hpp"

#include "hjq/errors.hpp"

#include <cctype>
#include <optional>

namespace hjq {

namespace {

enum class Tok { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text; // Integer digits or identifier
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_;

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, start, ""};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            current_ = {Tok::Integer, start, std::string(text_.substr(start, pos_ - start))};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            current_ = {Tok::Ident, start, std::string(text_.substr(start, pos_ - start))};
            return;
        }
        ++pos_;
        switch (c) {
            case '+': current_ = {Tok::Plus, start, "+"}; return;
            case '-': current_ = {Tok::Minus, start, "-"}; return;
            case '*': current_ = {Tok::Star, start, "*"}; return;
            case '/': current_ = {Tok::Slash, start, "/"}; return;
            case '^': current_ = {Tok::Caret, start, "^"}; return;
            case '(': current_ = {Tok::LParen, start, "("}; return;
            case ')': current_ = {Tok::RParen, start, ")"}; return;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", start);
        }
    }
};

std::optional<Func> lookup_func(std::string_view name) {
    if (name == "sqrt") return Func::Sqrt;
    if (name == "sin") return Func::Sin;
    if (name == "cos") return Func::Cos;
    if (name == "exp") return Func::Exp;
    if (name == "log") return Func::Log;
    return std::nullopt;
}

class Parser {
public:
    Parser(std::string_view text, const SymbolTable* table, SymbolTable* mutable_table)
        : lex_(text), table_(table), mutable_table_(mutable_table) {}

    ExprPtr run() {
        ExprPtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End)
            throw SyntaxError("unexpected trailing input", t.offset);
        return e;
    }

private:
    Lexer lex_;
    const SymbolTable* table_;
    SymbolTable* mutable_table_;

    ExprPtr expr() {
        std::vector<ExprPtr> terms;
        terms.push_back(term());
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            ExprPtr t = term();
            terms.push_back(minus ? make_negation(std::move(t)) : std::move(t));
        }
        return make_sum(std::move(terms));
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
            bool div = lex_.take().kind == Tok::Slash;
            ExprPtr rhs = factor();
            if (div)
                e = make_quotient(std::move(e), std::move(rhs));
            else
                e = make_product({std::move(e), std::move(rhs)});
        }
        return e;
    }

    ExprPtr factor() {
        ExprPtr b = base();
        if (lex_.peek().kind == Tok::Caret) {
            lex_.take();
            bool neg = false;
            if (lex_.peek().kind == Tok::Minus) {
                lex_.take();
                neg = true;
            }
            Token t = lex_.peek();
            if (t.kind != Tok::Integer)
                throw SyntaxError("expected integer exponent", t.offset);
            lex_.take();
            if (t.text.size() > 6)
                throw SyntaxError("exponent too large", t.offset);
            int k = std::stoi(t.text);
            return make_power(std::move(b), neg ? -k : k);
        }
        return b;
    }

    ExprPtr base() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::Integer: {
                lex_.take();
                return make_number(Rational(BigInt(t.text)));
            }
            case Tok::Ident: {
                lex_.take();
                if (auto f = lookup_func(t.text)) {
                    Token open = lex_.peek();
                    if (open.kind != Tok::LParen)
                        throw SyntaxError("expected '(' after function name", open.offset);
                    lex_.take();
                    ExprPtr arg = expr();
                    expect(Tok::RParen, "expected ')'");
                    return make_call(*f, std::move(arg));
                }
                return symbol_ref(t);
            }
            case Tok::LParen: {
                lex_.take();
                ExprPtr e = expr();
                expect(Tok::RParen, "expected ')'");
                return e;
            }
            case Tok::Minus: {
                lex_.take();
                ExprPtr e = base();
                if (e->kind == ExprKind::Number) return make_number(Rational(-e->value));
                return make_negation(std::move(e));
            }
            default:
                throw SyntaxError("expected a number, identifier or '('", t.offset);
        }
    }

    ExprPtr symbol_ref(const Token& t) {
        if (auto id = table_->find(t.text)) return make_symbol(*id);
        if (mutable_table_) {
            SymbolId id = mutable_table_->add(t.text, SymbolKind::Undeclared);
            return make_symbol(id);
        }
        throw UnknownIdentifierError(t.text, t.offset);
    }

    void expect(Tok kind, const char* msg) {
        const Token& t = lex_.peek();
        if (t.kind != kind) throw SyntaxError(msg, t.offset);
        lex_.take();
    }
};

} // namespace

ExprPtr parse_expr(std::string_view text, const SymbolTable& table) {
    return Parser(text, &table, nullptr).run();
}

ExprPtr parse_expr_permissive(std::string_view text, SymbolTable& table) {
    return Parser(text, &table, &table).run();
}

bool is_reserved_word(std::string_view name) { return lookup_func(name).has_value(); }

} // namespace hjq
