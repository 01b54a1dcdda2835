#include "classlim/dataset.hpp"
#include "classlim/errors.hpp"

namespace classlim {

std::size_t DatasetTable::n1() const {
    std::size_t n = 0;
    for (int l : labels) n += (l == 1);
    return n;
}

std::size_t DatasetTable::n2() const { return labels.size() - n1(); }

double DatasetTable::f1() const {
    return labels.empty() ? 0.0 : static_cast<double>(n1()) / labels.size();
}

std::vector<std::size_t> DatasetTable::class_indices(int label) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) idx.push_back(i);
    return idx;
}

DatasetTable DatasetTable::select_variables(const std::vector<std::size_t>& idx) const {
    DatasetTable out;
    out.name = name;
    out.class_names = class_names;
    out.labels = labels;
    for (std::size_t j : idx) {
        if (j >= variables.size()) throw Error("select_variables: index out of range");
        out.variables.push_back(variables[j]);
    }
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> r;
        r.reserve(idx.size());
        for (std::size_t j : idx) r.push_back(row[j]);
        out.rows.push_back(std::move(r));
    }
    return out;
}

void DatasetTable::validate() const {
    if (rows.size() != labels.size())
        throw Error("dataset: row/label count mismatch");
    for (const auto& row : rows)
        if (row.size() != variables.size())
            throw Error("dataset: row arity does not match the variable list");
    bool has1 = false, has2 = false;
    for (int l : labels) {
        if (l == 1) has1 = true;
        else if (l == 2) has2 = true;
        else throw Error("dataset: labels must be 1 or 2");
    }
    if (!has1 || !has2) throw Error("dataset: both classes must be present");
}

} // namespace classlim
