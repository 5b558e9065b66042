#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "framelet/analysis.hpp"
#include "framelet/laurent.hpp"

namespace framelet {

struct SyntaxError : Error {
    int line = 0, column = 0;
    SyntaxError(const std::string& msg, int ln, int col = 1)
        : Error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " + msg),
          line(ln),
          column(col) {}
};
struct DuplicateFilter : Error {
    using Error::Error;
};
struct MissingLowpass : Error {
    using Error::Error;
};

/**
 * The on-disk bank format:
 *
 *   FRAMELET-BANK 1
 *   field real|complex
 *   filter <name> lo <int> len <int>
 *   <re> <im>          (len coefficient lines, 17 significant digits)
 *
 * Comment lines start with '#'; filter names are restricted to
 * a, b1, b2, bp, bn and "a" must appear exactly once.  Parsing a
 * serialized file reproduces the value exactly.
 */
struct BankFile {
    int version = 1;
    Field field = Field::Real;
    std::vector<std::pair<std::string, LaurentPoly>> filters;  // file order

    const LaurentPoly* find(const std::string& name) const {
        for (const auto& [n, p] : filters)
            if (n == name) return &p;
        return nullptr;
    }

    /// {a; high-pass filters in file order}.  Requires at least one
    /// high-pass filter.
    FilterBank to_filter_bank() const {
        const LaurentPoly* a = find("a");
        if (!a) throw MissingLowpass("bank has no filter a");
        FilterBank bank;
        bank.lowpass = *a;
        bank.field = field;
        for (const auto& [n, p] : filters)
            if (n != "a") bank.highpass.push_back(p);
        if (bank.highpass.empty()) throw WrongArity("bank has no high-pass filter");
        return bank;
    }
};

namespace detail {

inline const std::array<const char*, 5> kFilterNames = {"a", "b1", "b2", "bp", "bn"};

inline bool known_filter_name(const std::string& n) {
    for (const char* k : kFilterNames)
        if (n == k) return true;
    return false;
}

} // namespace detail

inline BankFile parse_bank(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    BankFile bank;

    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        if (required) throw SyntaxError("unexpected end of file", lineno + 1);
        return false;
    };

    next_line(true);
    {
        std::istringstream ls(line);
        std::string magic;
        int version = 0;
        if (!(ls >> magic >> version) || magic != "FRAMELET-BANK")
            throw SyntaxError("expected header 'FRAMELET-BANK 1'", lineno);
        if (version != 1) throw SyntaxError("unsupported version", lineno, static_cast<int>(magic.size()) + 2);
        bank.version = version;
    }

    next_line(true);
    {
        std::istringstream ls(line);
        std::string kw, val;
        if (!(ls >> kw >> val) || kw != "field" || (val != "real" && val != "complex"))
            throw SyntaxError("expected 'field real|complex'", lineno);
        bank.field = val == "real" ? Field::Real : Field::Complex;
    }

    while (next_line(false)) {
        std::istringstream ls(line);
        std::string kw, name, lo_kw, len_kw;
        int lo = 0, len = 0;
        if (!(ls >> kw) || kw != "filter") throw SyntaxError("expected 'filter <name> lo <int> len <int>'", lineno);
        if (!(ls >> name >> lo_kw >> lo >> len_kw >> len) || lo_kw != "lo" || len_kw != "len" || len < 0)
            throw SyntaxError("malformed filter header", lineno);
        if (!detail::known_filter_name(name))
            throw SyntaxError("unknown filter name '" + name + "'", lineno, 8);
        if (bank.find(name)) throw DuplicateFilter("duplicate filter '" + name + "'");

        std::vector<cplx> coeffs(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) {
            next_line(true);
            const char* s = line.c_str();
            char* end = nullptr;
            const double re = std::strtod(s, &end);
            if (end == s) throw SyntaxError("expected '<re> <im>'", lineno);
            const char* s2 = end;
            const double im = std::strtod(s2, &end);
            if (end == s2) throw SyntaxError("expected '<re> <im>'", lineno, static_cast<int>(s2 - s) + 1);
            while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
            if (*end != '\0') throw SyntaxError("trailing characters after coefficient", lineno,
                                                static_cast<int>(end - s) + 1);
            coeffs[static_cast<std::size_t>(i)] = cplx(re, im);
        }
        bank.filters.emplace_back(name, LaurentPoly(lo, std::move(coeffs)));
    }

    if (!bank.find("a")) throw MissingLowpass("bank has no filter a");
    return bank;
}

inline std::string serialize_bank(const BankFile& bank) {
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream os;
    os << "FRAMELET-BANK " << bank.version << "\n";
    os << "field " << (bank.field == Field::Real ? "real" : "complex") << "\n";
    for (const auto& [name, p] : bank.filters) {
        os << "filter " << name << " lo " << (p.is_zero() ? 0 : p.lo()) << " len " << p.size() << "\n";
        for (const auto& c : p.coefficients()) os << fmt(c.real()) << " " << fmt(c.imag()) << "\n";
    }
    return os.str();
}

inline BankFile bank_file_from(const FilterBank& bank, const std::vector<std::string>& names) {
    BankFile bf;
    bf.field = bank.field;
    bf.filters.emplace_back("a", bank.lowpass);
    for (std::size_t i = 0; i < bank.highpass.size(); ++i)
        bf.filters.emplace_back(names.at(i), bank.highpass[i]);
    return bf;
}

} // namespace framelet
