#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "chaoskit/errors.hpp"

namespace chaoskit {

/// Hard cap on tensor degree. Contractions of two degree-4 kernels stay
/// representable; everything at desk scale lives well below this.
inline constexpr int kMaxDegree = 8;

/// An n-tuple of (time cell, state atom) index pairs. Cells and atoms are
/// 0-based; cells index the dyadic grid at some level owned by the caller.
///
/// Packed into two 64-bit words (8 bits per slot) so it can serve as a cheap
/// ordered map key.
class CellTuple {
public:
    CellTuple() = default;

    CellTuple(std::initializer_list<std::pair<int, int>> entries) {
        for (const auto& [c, a] : entries) push_back(c, a);
    }

    static CellTuple from_vectors(const std::vector<int>& cells, const std::vector<int>& atoms) {
        if (cells.size() != atoms.size())
            throw IndexOutOfRange("CellTuple: cells/atoms size mismatch");
        CellTuple t;
        for (std::size_t i = 0; i < cells.size(); ++i) push_back_checked(t, cells[i], atoms[i]);
        return t;
    }

    int degree() const { return n_; }

    int cell(int i) const { return static_cast<int>((cells_ >> (8 * i)) & 0xff); }
    int atom(int i) const { return static_cast<int>((atoms_ >> (8 * i)) & 0xff); }

    void push_back(int cell, int atom) { push_back_checked(*this, cell, atom); }

    void set_cell(int i, int cell) {
        cells_ = (cells_ & ~(std::uint64_t{0xff} << (8 * i))) |
                 (static_cast<std::uint64_t>(cell) << (8 * i));
    }
    void set_atom(int i, int atom) {
        atoms_ = (atoms_ & ~(std::uint64_t{0xff} << (8 * i))) |
                 (static_cast<std::uint64_t>(atom) << (8 * i));
    }

    /// True iff some time cell appears twice (the excluded diagonal).
    bool has_repeated_cell() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (cell(i) == cell(j)) return true;
        return false;
    }

    bool cells_strictly_increasing() const {
        for (int i = 0; i + 1 < n_; ++i)
            if (cell(i) >= cell(i + 1)) return false;
        return true;
    }

    int max_cell() const {
        int m = -1;
        for (int i = 0; i < n_; ++i) m = cell(i) > m ? cell(i) : m;
        return m;
    }

    /// Tuple with the slots reordered as out[i] = in[perm[i]].
    CellTuple permuted(const std::vector<int>& perm) const {
        CellTuple out;
        for (int i = 0; i < n_; ++i) out.push_back(cell(perm[i]), atom(perm[i]));
        return out;
    }

    /// Tuple with slot i removed.
    CellTuple without_slot(int i) const {
        CellTuple out;
        for (int j = 0; j < n_; ++j)
            if (j != i) out.push_back(cell(j), atom(j));
        return out;
    }

    CellTuple concat(const CellTuple& other) const {
        CellTuple out = *this;
        for (int i = 0; i < other.n_; ++i) out.push_back(other.cell(i), other.atom(i));
        return out;
    }

    std::vector<int> cells() const {
        std::vector<int> v(n_);
        for (int i = 0; i < n_; ++i) v[i] = cell(i);
        return v;
    }
    std::vector<int> atoms() const {
        std::vector<int> v(n_);
        for (int i = 0; i < n_; ++i) v[i] = atom(i);
        return v;
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < n_; ++i) {
            if (i) s += ",";
            s += "(" + std::to_string(cell(i)) + "," + std::to_string(atom(i)) + ")";
        }
        return s + "]";
    }

    friend auto operator<=>(const CellTuple&, const CellTuple&) = default;

private:
    static void push_back_checked(CellTuple& t, int cell, int atom) {
        if (t.n_ >= kMaxDegree) throw IndexOutOfRange("CellTuple: degree above cap");
        if (cell < 0 || cell > 0xff || atom < 0 || atom > 0xff)
            throw IndexOutOfRange("CellTuple: cell/atom outside 8-bit range");
        t.cells_ |= static_cast<std::uint64_t>(cell) << (8 * t.n_);
        t.atoms_ |= static_cast<std::uint64_t>(atom) << (8 * t.n_);
        ++t.n_;
    }

    std::int8_t n_ = 0;
    std::uint64_t cells_ = 0;
    std::uint64_t atoms_ = 0;
};

}  // namespace chaoskit
