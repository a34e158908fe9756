#pragma once

// The pmat text format: a field directive, dimensions, optional block
// directives, and a whitespace-separated entry grid with '?' marking the
// unspecified positions.  '#' starts a comment.
//
//     # staircase example
//     field GF(5)
//     rows 2
//     cols 3
//     rowblocks 1 1
//     colblocks 2 1
//     3 ? ?
//     0 4 1

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "minrank/partial_matrix.hpp"

namespace minrank {

template <class Scalar>
struct PmatDocument {
    FieldSpec field = FieldSpec::rationals();
    PartialMatrix<Scalar> matrix;
    std::optional<BlockPartition> blocks;

    bool fully_specified() const { return matrix.pattern().is_full(); }

    bool operator==(const PmatDocument& o) const {
        return field == o.field && matrix == o.matrix && blocks == o.blocks;
    }
};

using AnyDocument = std::variant<PmatDocument<Rational>, PmatDocument<Fp>>;

namespace detail {

struct Token {
    std::string text;
    std::size_t line;    // 1-based
    std::size_t column;  // 1-based
};

inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 1;
    std::size_t col = 1;
    std::vector<Token> current;
    std::string word;
    std::size_t word_col = 0;
    auto flush_word = [&]() {
        if (!word.empty()) {
            current.push_back({word, line_no, word_col});
            word.clear();
        }
    };
    for (std::size_t k = 0; k <= text.size(); ++k) {
        const char ch = k < text.size() ? text[k] : '\n';
        if (ch == '#') {
            flush_word();
            while (k < text.size() && text[k] != '\n') ++k;
            lines.push_back(std::move(current));
            current.clear();
            ++line_no;
            col = 1;
            continue;
        }
        if (ch == '\n') {
            flush_word();
            lines.push_back(std::move(current));
            current.clear();
            ++line_no;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            flush_word();
        } else {
            if (word.empty()) word_col = col;
            word.push_back(ch);
        }
        ++col;
    }
    return lines;
}

inline long parse_count(const Token& tok, const char* what) {
    if (tok.text.empty() || tok.text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(std::string("expected a nonnegative integer for ") + what + ", got '" +
                             tok.text + "'",
                         tok.line, tok.column);
    try {
        return std::stol(tok.text);
    } catch (const std::exception&) {
        throw ParseError(std::string("integer out of range for ") + what + ": '" + tok.text + "'",
                         tok.line, tok.column);
    }
}

inline bool looks_like_integer(const std::string& s) {
    std::size_t k = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (k == s.size()) return false;
    for (; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
}

inline bool looks_like_fraction(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return false;
    return looks_like_integer(s.substr(0, slash)) && looks_like_integer(s.substr(slash + 1));
}

template <class Scalar>
Scalar parse_entry(const Token& tok, const FieldSpec& fs);

template <>
inline Rational parse_entry<Rational>(const Token& tok, const FieldSpec&) {
    if (!looks_like_integer(tok.text) && !looks_like_fraction(tok.text))
        throw ParseError("bad entry '" + tok.text + "'", tok.line, tok.column);
    Rational r = Rational::from_string(tok.text);
    return r;
}

template <>
inline Fp parse_entry<Fp>(const Token& tok, const FieldSpec& fs) {
    if (looks_like_fraction(tok.text))
        throw FieldMismatchError("fraction '" + tok.text + "' in a prime-field document",
                                 tok.line, tok.column);
    if (!looks_like_integer(tok.text))
        throw ParseError("bad entry '" + tok.text + "'", tok.line, tok.column);
    std::string digits = tok.text;
    if (digits[0] == '+') digits.erase(0, 1);  // GMP rejects '+'
    return Fp::from_mpz(mpz_class(digits), fs.modulus());
}

struct ParsedHeader {
    FieldSpec field = FieldSpec::rationals();
    std::optional<Index> rows, cols;
    std::optional<std::vector<Index>> rowblocks, colblocks;
    std::vector<Token> grid;
};

inline ParsedHeader parse_header(std::string_view text) {
    ParsedHeader h;
    bool field_seen = false;
    for (const auto& line : tokenize_lines(text)) {
        if (line.empty()) continue;
        const std::string& head = line[0].text;
        auto expect_one = [&](const char* what) -> const Token& {
            if (line.size() != 2)
                throw ParseError(std::string("directive '") + what + "' expects one argument",
                                 line[0].line, line[0].column);
            return line[1];
        };
        if (head == "field") {
            const Token& arg = expect_one("field");
            if (field_seen) throw ParseError("duplicate field directive", arg.line, arg.column);
            field_seen = true;
            if (arg.text == "Q") {
                h.field = FieldSpec::rationals();
            } else if (arg.text.rfind("GF(", 0) == 0 && arg.text.back() == ')') {
                const std::string inner = arg.text.substr(3, arg.text.size() - 4);
                if (inner.empty() || inner.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError("bad modulus '" + inner + "'", arg.line, arg.column);
                try {
                    h.field = FieldSpec::prime_field(std::stoull(inner));
                } catch (const FieldError& e) {
                    throw ParseError(e.what(), arg.line, arg.column);
                }
            } else {
                throw ParseError("unknown field '" + arg.text + "' (use Q or GF(p))", arg.line,
                                 arg.column);
            }
        } else if (head == "rows" || head == "cols") {
            const Token& arg = expect_one(head.c_str());
            auto& slot = head == "rows" ? h.rows : h.cols;
            if (slot) throw ParseError("duplicate " + head + " directive", arg.line, arg.column);
            slot = parse_count(arg, head.c_str());
        } else if (head == "rowblocks" || head == "colblocks") {
            auto& slot = head == "rowblocks" ? h.rowblocks : h.colblocks;
            if (slot) throw ParseError("duplicate " + head + " directive", line[0].line,
                                       line[0].column);
            std::vector<Index> sizes;
            for (std::size_t k = 1; k < line.size(); ++k)
                sizes.push_back(parse_count(line[k], head.c_str()));
            slot = std::move(sizes);
        } else {
            for (const Token& tok : line) h.grid.push_back(tok);
        }
    }
    return h;
}

template <class Scalar>
PmatDocument<Scalar> build_document(const ParsedHeader& h) {
    if (!h.rows || !h.cols) throw ParseError("missing rows/cols directive");
    const Index rows = *h.rows;
    const Index cols = *h.cols;
    if (static_cast<Index>(h.grid.size()) != rows * cols)
        throw BadDimensionsError("grid has " + std::to_string(h.grid.size()) + " entries, expected " +
                                 std::to_string(rows) + "x" + std::to_string(cols) + " = " +
                                 std::to_string(rows * cols));
    PmatDocument<Scalar> doc{h.field, PartialMatrix<Scalar>(h.field, Pattern(rows, cols)),
                             std::nullopt};
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            const Token& tok = h.grid[static_cast<std::size_t>(i * cols + j)];
            if (tok.text == "?") continue;
            doc.matrix.set(i, j, parse_entry<Scalar>(tok, h.field));
        }
    if (h.rowblocks || h.colblocks) {
        if (!h.rowblocks || !h.colblocks)
            throw ParseError("rowblocks and colblocks must be given together");
        BlockPartition bp{*h.rowblocks, *h.colblocks};
        try {
            bp.validate_for(rows, cols);
        } catch (const DimensionError& e) {
            throw BadDimensionsError(e.what());
        }
        doc.blocks = std::move(bp);
    }
    return doc;
}

}  // namespace detail

inline AnyDocument parse_pmat(std::string_view text) {
    const detail::ParsedHeader h = detail::parse_header(text);
    if (h.field.is_prime_field()) return detail::build_document<Fp>(h);
    return detail::build_document<Rational>(h);
}

template <class Scalar>
std::string emit_pmat(const PmatDocument<Scalar>& doc) {
    std::ostringstream os;
    os << "field " << doc.field.to_string() << "\n";
    os << "rows " << doc.matrix.rows() << "\n";
    os << "cols " << doc.matrix.cols() << "\n";
    if (doc.blocks) {
        os << "rowblocks";
        for (Index s : doc.blocks->row_sizes) os << " " << s;
        os << "\ncolblocks";
        for (Index s : doc.blocks->col_sizes) os << " " << s;
        os << "\n";
    }
    for (Index i = 0; i < doc.matrix.rows(); ++i) {
        for (Index j = 0; j < doc.matrix.cols(); ++j) {
            if (j > 0) os << " ";
            if (doc.matrix.is_specified(i, j))
                os << doc.matrix.at(i, j).to_string();
            else
                os << "?";
        }
        os << "\n";
    }
    return os.str();
}

template <class Scalar>
PmatDocument<Scalar> make_document(const PartialMatrix<Scalar>& pm,
                                   std::optional<BlockPartition> blocks = std::nullopt) {
    return PmatDocument<Scalar>{pm.field(), pm, std::move(blocks)};
}

}  // namespace minrank
