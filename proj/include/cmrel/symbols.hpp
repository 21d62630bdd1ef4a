#pragma once
// Declared constant symbols for relation coefficients.
//
// A symbol is either free or a root symbol standing for a square root of an
// exact rational radicand.  Root symbols keep exponent 0 or 1 in normal form
// (squares rewrite to the radicand), so roots never nest.

#include <gmpxx.h>

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmrel {

inline bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

inline bool is_matrix_variable_name(const std::string& s) {
    return s == "X11" || s == "X12" || s == "X21" || s == "X22";
}

struct ConstSymbol {
    std::string name;
    bool is_root = false;
    mpq_class radicand{0};  // meaningful iff is_root; nonzero

    bool operator==(const ConstSymbol& o) const {
        return name == o.name && is_root == o.is_root &&
               (!is_root || radicand == o.radicand);
    }
};

class SymbolTable {
public:
    SymbolTable() = default;

    std::size_t add_free(const std::string& name) { return add(ConstSymbol{name, false, 0}); }
    std::size_t add_root(const std::string& name, const mpq_class& radicand) {
        return add(ConstSymbol{name, true, radicand});
    }

    std::size_t size() const { return syms_.size(); }
    const ConstSymbol& at(std::size_t i) const { return syms_.at(i); }
    std::optional<std::size_t> find(const std::string& name) const {
        for (std::size_t i = 0; i < syms_.size(); ++i)
            if (syms_[i].name == name) return i;
        return std::nullopt;
    }
    const std::vector<ConstSymbol>& symbols() const { return syms_; }

    bool operator==(const SymbolTable& o) const { return syms_ == o.syms_; }

private:
    std::size_t add(ConstSymbol s) {
        if (!valid_identifier(s.name) || is_matrix_variable_name(s.name))
            throw std::invalid_argument("invalid symbol name: '" + s.name + "'");
        if (find(s.name))
            throw std::invalid_argument("duplicate symbol: '" + s.name + "'");
        if (s.is_root && s.radicand == 0)
            throw std::invalid_argument("root radicand must be nonzero: '" + s.name + "'");
        syms_.push_back(std::move(s));
        return syms_.size() - 1;
    }

    std::vector<ConstSymbol> syms_;
};

using SymbolTableRef = std::shared_ptr<const SymbolTable>;

inline SymbolTableRef make_table(SymbolTable t) {
    return std::make_shared<const SymbolTable>(std::move(t));
}

inline SymbolTableRef empty_table() {
    static const SymbolTableRef t = make_table(SymbolTable{});
    return t;
}

// Tables match if they are the same object or have equal contents.
inline bool same_table(const SymbolTableRef& a, const SymbolTableRef& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

}  // namespace cmrel
