#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace classlim {

enum class VariableKind { continuous, discrete };

struct Variable {
    std::string name;
    VariableKind kind = VariableKind::continuous;
    // For discrete variables: the category labels, indexed by the stored value.
    std::vector<std::string> categories;
};

// Labeled two-class table. Rows hold numeric values; discrete variables store
// the category index. Labels are 1 or 2.
struct DatasetTable {
    std::string name;
    std::vector<Variable> variables;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::pair<std::string, std::string> class_names = {"1", "2"};

    std::size_t dims() const { return variables.size(); }
    std::size_t n_rows() const { return rows.size(); }
    std::size_t n1() const;
    std::size_t n2() const;
    double f1() const;

    // Row indices of the given class, in table order.
    std::vector<std::size_t> class_indices(int label) const;
    // Restrict to a subset of variables (by index), keeping all rows.
    DatasetTable select_variables(const std::vector<std::size_t>& idx) const;
    // Throws Error if labels/arity/class presence are inconsistent.
    void validate() const;
};

} // namespace classlim
