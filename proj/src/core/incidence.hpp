#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace fdf {

/// Compressed row storage for per-cell id lists (faces, cofaces, loops).
class IncidenceList {
public:
  IncidenceList() = default;

  static IncidenceList from_lists(const std::vector<std::vector<int>>& lists) {
    IncidenceList out;
    out.offsets_.reserve(lists.size() + 1);
    out.offsets_.push_back(0);
    std::size_t total = 0;
    for (const auto& l : lists) total += l.size();
    out.data_.reserve(total);
    for (const auto& l : lists) {
      out.data_.insert(out.data_.end(), l.begin(), l.end());
      out.offsets_.push_back(static_cast<int>(out.data_.size()));
    }
    return out;
  }

  /// Builder that appends one row at a time.
  void push_row(std::span<const int> row) {
    if (offsets_.empty()) offsets_.push_back(0);
    data_.insert(data_.end(), row.begin(), row.end());
    offsets_.push_back(static_cast<int>(data_.size()));
  }

  int rows() const {
    return offsets_.empty() ? 0 : static_cast<int>(offsets_.size()) - 1;
  }

  std::span<const int> operator[](int i) const {
    return {data_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }

  bool empty() const { return rows() == 0; }

  /// Sorts every row in place (face lists are kept sorted for binary search).
  void sort_rows() {
    for (int i = 0; i < rows(); ++i) {
      std::sort(data_.begin() + offsets_[i], data_.begin() + offsets_[i + 1]);
    }
  }

  int row_position(int i, int value) const {
    auto row = (*this)[i];
    auto it = std::lower_bound(row.begin(), row.end(), value);
    if (it == row.end() || *it != value) return -1;
    return static_cast<int>(it - row.begin());
  }

  int offset(int i) const { return offsets_[i]; }
  std::size_t total() const { return data_.size(); }

private:
  std::vector<int> offsets_;
  std::vector<int> data_;
};

inline bool sorted_contains(std::span<const int> row, int value) {
  return std::binary_search(row.begin(), row.end(), value);
}

} // namespace fdf
