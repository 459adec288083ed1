#include "hjq/model.hpp"

#include "hjq/errors.hpp"
#include "hjq/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace hjq {

namespace {

class ModelTextParser {
public:
    explicit ModelTextParser(const std::string& text) : text_(text) {}

    ModelDefinition run() {
        ModelDefinition def;
        expect_word("model");
        def.name = ident("model name");
        expect_char('{');
        bool saw_lagrangian = false;
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '}') {
                ++pos_;
                break;
            }
            std::string keyword = ident("clause keyword");
            expect_char(':');
            if (keyword == "coords") {
                def.coordinates = ident_list();
            } else if (keyword == "consts") {
                def.constants = ident_list();
            } else if (keyword == "lagrangian") {
                def.lagrangian_text = quoted_string();
                saw_lagrangian = true;
            } else {
                throw ModelFormatError("unknown clause '" + keyword + "'");
            }
            expect_char(';');
        }
        skip_ws();
        if (pos_ != text_.size()) throw ModelFormatError("trailing content after model block");
        if (def.coordinates.empty()) throw ModelFormatError("model declares no coordinates");
        if (!saw_lagrangian) throw ModelFormatError("model has no lagrangian clause");
        return def;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void expect_char(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ModelFormatError(std::string("expected '") + c + "' in model file");
        ++pos_;
    }

    void expect_word(const std::string& w) {
        std::string got = ident(("keyword '" + w + "'").c_str());
        if (got != w) throw ModelFormatError("expected keyword '" + w + "', got '" + got + "'");
    }

    std::string ident(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) throw ModelFormatError(std::string("expected ") + what);
        return text_.substr(start, pos_ - start);
    }

    std::vector<std::string> ident_list() {
        std::vector<std::string> ids;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == ';') break;
            if (c == ',') {
                ++pos_;
                continue;
            }
            ids.push_back(ident("identifier"));
        }
        return ids;
    }

    std::string quoted_string() {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '"')
            throw ModelFormatError("expected quoted expression");
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
        if (pos_ >= text_.size()) throw ModelFormatError("unterminated quoted expression");
        std::string s = text_.substr(start, pos_ - start);
        ++pos_;
        return s;
    }
};

} // namespace

BoundModel bind_model(const ModelDefinition& def) {
    if (def.coordinates.empty())
        throw ModelFormatError("model '" + def.name + "' declares no coordinates");
    for (const auto& list : {def.coordinates, def.constants}) {
        for (const auto& nm : list) {
            if (is_reserved_word(nm))
                throw ModelFormatError("'" + nm + "' is a reserved function name");
            if (nm == "tau" || nm == "p_0")
                throw ModelFormatError("'" + nm + "' is a reserved symbol name");
        }
    }

    BoundModel m;
    m.definition = def;
    try {
        for (const auto& c : def.coordinates) {
            SymbolId q = m.table.add(c, SymbolKind::Coordinate);
            SymbolId v = m.table.add("d" + c, SymbolKind::Velocity, q);
            SymbolId p = m.table.add("p_" + c, SymbolKind::Momentum, q);
            m.coordinates.push_back(q);
            m.velocities.push_back(v);
            m.momenta.push_back(p);
        }
        for (const auto& k : def.constants)
            m.constants.push_back(m.table.add(k, SymbolKind::Constant));
        m.tau = m.table.add("tau", SymbolKind::ParameterTime);
        m.p0 = m.table.add("p_0", SymbolKind::Momentum, m.tau);
    } catch (const Error& e) {
        throw ModelFormatError("model '" + def.name + "': " + e.what());
    }

    try {
        m.lagrangian = parse_expr_permissive(def.lagrangian_text, m.table);
    } catch (const SyntaxError& e) {
        throw ModelFormatError("model '" + def.name + "' lagrangian: " + e.what());
    }
    m.table.freeze();
    return m;
}

ModelDefinition parse_model_text(const std::string& text) { return ModelTextParser(text).run(); }

ModelDefinition load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelFormatError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str());
}

} // namespace hjq
