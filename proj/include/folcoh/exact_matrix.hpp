#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "folcoh/scalar.hpp"

namespace folcoh {

using SparseVector = std::map<std::size_t, Scalar>;

/// Sparse exact matrix over Q(i), stored by columns.
///
/// Rank, kernel and solve split the matrix into the connected components of
/// its row/column incidence graph and run exact Gauss-Jordan elimination on
/// each dense block.  Kernel vectors come from the reduced row echelon form,
/// which is unique, so results do not depend on pivot choices.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    void add(std::size_t row, std::size_t col, const Scalar& value) {
        if (row >= rows_) throw IndexOutOfRange("row", row, rows_);
        if (col >= cols()) throw IndexOutOfRange("column", col, cols());
        if (value.is_zero()) return;
        auto& column = columns_[col];
        auto [it, inserted] = column.try_emplace(row, value);
        if (!inserted) {
            it->second += value;
            if (it->second.is_zero()) column.erase(it);
        }
    }

    Scalar at(std::size_t row, std::size_t col) const {
        const auto& column = columns_.at(col);
        auto it = column.find(row);
        return it == column.end() ? Scalar() : it->second;
    }

    const SparseVector& column(std::size_t col) const { return columns_.at(col); }

    /// Appends a column (used for rank augmentation checks).
    void append_column(SparseVector column) {
        for (const auto& [r, v] : column)
            if (r >= rows_) throw IndexOutOfRange("row", r, rows_);
        std::erase_if(column, [](const auto& e) { return e.second.is_zero(); });
        columns_.push_back(std::move(column));
    }

    SparseVector multiply(const SparseVector& x) const {
        SparseVector out;
        for (const auto& [c, xv] : x)
            for (const auto& [r, v] : columns_.at(c)) {
                auto& slot = out[r];
                slot += v * xv;
            }
        std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
        return out;
    }

    std::size_t rank() const {
        std::size_t total = 0;
        for (const auto& block : blocks()) total += reduce(block).pivots.size();
        return total;
    }

    std::size_t nullity() const { return cols() - rank(); }

    /// Basis of the null space, one sparse vector per free column.
    std::vector<SparseVector> kernel_basis() const {
        std::vector<SparseVector> out;
        for (const auto& block : blocks()) {
            auto rref = reduce(block);
            std::vector<bool> is_pivot(block.cols.size(), false);
            for (auto [row, col] : rref.pivots) is_pivot[col] = true;
            for (std::size_t free = 0; free < block.cols.size(); ++free) {
                if (is_pivot[free]) continue;
                SparseVector v;
                v[block.cols[free]] = Scalar(1);
                for (auto [row, col] : rref.pivots) {
                    const Scalar& e = rref.entries[row][free];
                    if (!e.is_zero()) v[block.cols[col]] = -e;
                }
                out.push_back(std::move(v));
            }
        }
        return out;
    }

    /// Some x with A x = b, or nullopt if b is not in the column space.
    std::optional<SparseVector> solve(const SparseVector& b) const {
        for (const auto& [r, v] : b)
            if (r >= rows_) throw IndexOutOfRange("row", r, rows_);
        SparseVector x;
        std::vector<bool> covered(rows_, false);
        for (const auto& block : blocks()) {
            for (auto r : block.rows) covered[r] = true;
            auto rref = reduce(block, &b);
            // inconsistent iff a zero row carries a nonzero right-hand side
            for (std::size_t row = rref.pivots.size(); row < block.rows.size(); ++row)
                if (!rref.rhs[row].is_zero()) return std::nullopt;
            for (std::size_t p = 0; p < rref.pivots.size(); ++p)
                if (!rref.rhs[p].is_zero()) x[block.cols[rref.pivots[p].second]] = rref.rhs[p];
        }
        for (const auto& [r, v] : b)
            if (!covered[r] && !v.is_zero()) return std::nullopt;
        return x;
    }

private:
    struct Block {
        std::vector<std::size_t> rows;
        std::vector<std::size_t> cols;
    };

    struct Reduced {
        std::vector<std::vector<Scalar>> entries;               // block rows x block cols, RREF
        std::vector<Scalar> rhs;                                // transformed right-hand side
        std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col), row == index
    };

    /// Connected components of the bipartite incidence graph.  Empty
    /// columns form singleton blocks with no rows.
    std::vector<Block> blocks() const {
        const std::size_t nc = cols();
        std::vector<std::size_t> parent(nc + rows_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (std::size_t c = 0; c < nc; ++c)
            for (const auto& [r, v] : columns_[c]) parent[find(c)] = find(nc + r);

        std::map<std::size_t, Block> grouped;
        for (std::size_t c = 0; c < nc; ++c) grouped[find(c)].cols.push_back(c);
        for (std::size_t r = 0; r < rows_; ++r) {
            auto root = find(nc + r);
            auto it = grouped.find(root);
            if (it != grouped.end()) it->second.rows.push_back(r);
        }
        std::vector<Block> out;
        for (auto& [root, block] : grouped) out.push_back(std::move(block));
        return out;
    }

    Reduced reduce(const Block& block, const SparseVector* b = nullptr) const {
        const std::size_t nr = block.rows.size();
        const std::size_t nc = block.cols.size();
        std::map<std::size_t, std::size_t> local_row;
        for (std::size_t i = 0; i < nr; ++i) local_row[block.rows[i]] = i;

        Reduced out;
        out.entries.assign(nr, std::vector<Scalar>(nc));
        out.rhs.assign(nr, Scalar());
        for (std::size_t j = 0; j < nc; ++j)
            for (const auto& [r, v] : columns_[block.cols[j]]) out.entries[local_row.at(r)][j] = v;
        if (b) {
            for (const auto& [r, v] : *b) {
                auto it = local_row.find(r);
                if (it != local_row.end()) out.rhs[it->second] = v;
            }
        }

        auto support = [&](std::size_t row) {
            return std::count_if(out.entries[row].begin(), out.entries[row].end(),
                                 [](const Scalar& s) { return !s.is_zero(); });
        };

        std::size_t next_row = 0;
        for (std::size_t col = 0; col < nc && next_row < nr; ++col) {
            // sparsest available pivot row limits fill-in
            std::optional<std::size_t> pivot;
            long best = 0;
            for (std::size_t row = next_row; row < nr; ++row) {
                if (out.entries[row][col].is_zero()) continue;
                long s = support(row);
                if (!pivot || s < best) {
                    pivot = row;
                    best = s;
                }
            }
            if (!pivot) continue;
            std::swap(out.entries[*pivot], out.entries[next_row]);
            std::swap(out.rhs[*pivot], out.rhs[next_row]);

            auto& prow = out.entries[next_row];
            Scalar inv = Scalar(1) / prow[col];
            for (std::size_t j = col; j < nc; ++j)
                if (!prow[j].is_zero()) prow[j] *= inv;
            out.rhs[next_row] *= inv;

            for (std::size_t row = 0; row < nr; ++row) {
                if (row == next_row || out.entries[row][col].is_zero()) continue;
                Scalar factor = out.entries[row][col];
                for (std::size_t j = col; j < nc; ++j)
                    if (!prow[j].is_zero()) out.entries[row][j] -= factor * prow[j];
                if (!out.rhs[next_row].is_zero()) out.rhs[row] -= factor * out.rhs[next_row];
            }
            out.pivots.emplace_back(next_row, col);
            ++next_row;
        }
        return out;
    }

    std::size_t rows_ = 0;
    std::vector<SparseVector> columns_;
};

}  // namespace folcoh
