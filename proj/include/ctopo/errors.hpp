#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctopo {

/// A simplex with repeated vertices, or an empty simplex where one is not allowed.
struct MalformedSimplex : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Join inputs whose vertex sets overlap.
struct DisjointnessError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A complex that was required to sit inside another one does not.
struct ContainmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Simplex enumeration or candidate generation ran past its configured cap.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A simplex order in which some face does not precede its coface.
struct InvalidFiltration : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed generator spec, grouping or frame range.
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input file error with a 1-based location. Column 0 means "whole row".
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error(locate(row, column) + what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string locate(std::size_t row, std::size_t column) {
        if (row == 0) return {};
        std::string s = "row " + std::to_string(row);
        if (column != 0) s += ", column " + std::to_string(column);
        return s + ": ";
    }

    std::size_t row_;
    std::size_t column_;
};

}  // namespace ctopo
