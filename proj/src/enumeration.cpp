#include "idstates/enumeration.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

#include "idstates/stabilizer.hpp"

namespace idstates {

namespace {

void require_draw_size(int k) {
  if (k < 1) throw InputError("draw size K must be at least 1");
}

void collect_partitions(int remaining, int max_part, Partition& prefix,
                        std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    collect_partitions(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

using MatrixSet = std::unordered_set<StateMatrix, StateMatrixHash>;

StateMatrix matrix_from_rows(int k, std::span<const int> top,
                             std::span<const int> bottom) {
  StateMatrix m(k);
  for (std::size_t s = 0; s < top.size(); ++s) ++m.at(top[s], bottom[s]);
  return m;
}

// Every composition of k into 2k slots, grouped by partition.
std::vector<std::vector<int>> all_row_vectors(int k) {
  std::vector<std::vector<int>> rows;
  for (const auto& p : unordered_partitions(k)) {
    auto ps = placements(p, 2 * k);
    rows.insert(rows.end(), std::make_move_iterator(ps.begin()),
                std::make_move_iterator(ps.end()));
  }
  return rows;
}

// One left-justified nonincreasing placement per partition.
std::vector<std::vector<int>> canonical_first_rows(int k) {
  std::vector<std::vector<int>> rows;
  for (auto p : unordered_partitions(k)) {
    p.resize(2 * k, 0);
    rows.push_back(std::move(p));
  }
  return rows;
}

std::vector<StateMatrix> sorted(const MatrixSet& set) {
  std::vector<StateMatrix> out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Partition> unordered_partitions(int k) {
  require_draw_size(k);
  std::vector<Partition> out;
  Partition prefix;
  collect_partitions(k, k, prefix, out);
  return out;
}

std::vector<std::vector<int>> placements(std::span<const int> partition,
                                         int slots) {
  if (static_cast<int>(partition.size()) > slots) {
    throw InputError("partition has more parts than available slots");
  }
  std::vector<int> v(partition.begin(), partition.end());
  for (int x : v) {
    if (x < 1) throw InputError("partition entries must be positive");
  }
  v.resize(slots, 0);
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(v);
  } while (std::prev_permutation(v.begin(), v.end()));
  return out;
}

StateMatrix::StateMatrix(int draw_size)
    : draw_size_(draw_size),
      cells_(static_cast<std::size_t>(draw_size + 1) * (draw_size + 1), 0) {
  require_draw_size(draw_size);
}

StateMatrix::StateMatrix(int draw_size, std::vector<int> cells)
    : draw_size_(draw_size), cells_(std::move(cells)) {
  require_draw_size(draw_size);
  if (cells_.size() != static_cast<std::size_t>(dimension()) * dimension()) {
    throw InputError("state matrix needs (K+1)^2 entries");
  }
  for (int c : cells_) {
    if (c < 0) throw InputError("state matrix entries must be nonnegative");
  }
}

int StateMatrix::alphabet_size() const {
  return std::accumulate(cells_.begin(), cells_.end(), 0);
}

bool StateMatrix::is_valid() const {
  long row_weight = 0, col_weight = 0;
  for (int r = 0; r < dimension(); ++r) {
    for (int c = 0; c < dimension(); ++c) {
      row_weight += static_cast<long>(r) * at(r, c);
      col_weight += static_cast<long>(c) * at(r, c);
    }
  }
  return row_weight == draw_size_ && col_weight == draw_size_ &&
         alphabet_size() >= 1;
}

StateMatrix StateMatrix::transposed() const {
  StateMatrix t(draw_size_);
  for (int r = 0; r < dimension(); ++r) {
    for (int c = 0; c < dimension(); ++c) t.at(c, r) = at(r, c);
  }
  return t;
}

bool StateMatrix::is_symmetric() const { return *this == transposed(); }

StateMatrix StateMatrix::with_alphabet_size(int alphabet) const {
  if (alphabet < nonzero_columns()) {
    throw InputError("alphabet size " + std::to_string(alphabet) +
                     " is smaller than the " + std::to_string(nonzero_columns()) +
                     " distinct objects of this state");
  }
  StateMatrix out = *this;
  out.cells_[0] = alphabet - nonzero_columns();
  return out;
}

std::string StateMatrix::to_string() const {
  std::string s = "[";
  for (int r = 0; r < dimension(); ++r) {
    s += r ? ",[" : "[";
    for (int c = 0; c < dimension(); ++c) {
      if (c) s += ',';
      s += std::to_string(at(r, c));
    }
    s += ']';
  }
  return s + "]";
}

std::size_t StateMatrixHash::operator()(const StateMatrix& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.draw_size()) * 0x9e3779b97f4a7c15ULL;
  for (int c : m.cells()) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

StateMatrix state_matrix(const PairMatrix& pair) {
  return matrix_from_rows(pair.draw_size(), pair.first().counts(),
                          pair.second().counts());
}

StateMatrix canonicalize(const StateMatrix& m) {
  StateMatrix t = m.transposed();
  return std::lexicographical_compare(t.cells().begin(), t.cells().end(),
                                      m.cells().begin(), m.cells().end())
             ? t
             : m;
}

int n_distinct(const PairMatrix& pair) {
  int n = 0;
  for (int i = 0; i < pair.alphabet_size(); ++i) {
    if (pair.first()[i] != 0 || pair.second()[i] != 0) ++n;
  }
  return n;
}

namespace {

PairMatrix sorted_columns_pair(const StateMatrix& m) {
  std::vector<PairMatrix::Column> cols;
  for (int a = 0; a < m.dimension(); ++a) {
    for (int b = 0; b < m.dimension(); ++b) {
      cols.insert(cols.end(), m.at(a, b), PairMatrix::Column{a, b});
    }
  }
  std::sort(cols.begin(), cols.end(), std::greater<>());
  std::vector<int> top(cols.size()), bottom(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    top[i] = cols[i].top;
    bottom[i] = cols[i].bottom;
  }
  return {DrawVector(std::move(top)), DrawVector(std::move(bottom))};
}

bool representative_before(const PairMatrix& a, const PairMatrix& b) {
  if (a.first() != b.first()) return a.first() > b.first();
  return a.second() > b.second();
}

}  // namespace

PairMatrix representative_pair(const StateMatrix& m) {
  // Of the two row orders, keep the one whose first draw is lexicographically
  // larger, so the more concentrated draw comes first.
  auto direct = sorted_columns_pair(m);
  auto swapped = sorted_columns_pair(m.transposed());
  return representative_before(swapped, direct) ? swapped : direct;
}

IdentityState make_identity_state(const StateMatrix& canonical) {
  if (!canonical.is_valid()) {
    throw InputError("not a valid state matrix: " + canonical.to_string());
  }
  IdentityState s;
  s.canonical_matrix = canonical;
  s.representative = representative_pair(canonical);
  const auto& g1 = s.representative.first();
  const auto& g2 = s.representative.second();
  s.dissimilarity = dissimilarity(g1, g2);
  s.n_distinct = n_distinct(s.representative);
  s.is_symmetric = canonical.is_symmetric();
  s.stabilizer_size = stabilizer_size(s.representative);
  s.row_equiv = rows_equivalent(g1, g2);
  s.row_equal = g1 == g2;
  return s;
}

std::vector<StateMatrix> canonical_state_matrices(int k) {
  require_draw_size(k);
  const auto first_rows = canonical_first_rows(k);
  const auto second_rows = all_row_vectors(k);
  const auto n_second = static_cast<std::int64_t>(second_rows.size());
  const std::int64_t total =
      static_cast<std::int64_t>(first_rows.size()) * n_second;

  MatrixSet merged;
#pragma omp parallel
  {
    MatrixSet local;
#pragma omp for schedule(dynamic, 1024) nowait
    for (std::int64_t w = 0; w < total; ++w) {
      const auto& top = first_rows[w / n_second];
      const auto& bottom = second_rows[w % n_second];
      local.insert(canonicalize(matrix_from_rows(k, top, bottom)));
    }
#pragma omp critical(idstates_merge_states)
    merged.merge(local);
  }
  return sorted(merged);
}

std::vector<StateMatrix> canonical_state_matrices_serial(int k) {
  require_draw_size(k);
  MatrixSet set;
  for (const auto& top : canonical_first_rows(k)) {
    for (const auto& bottom : all_row_vectors(k)) {
      set.insert(canonicalize(matrix_from_rows(k, top, bottom)));
    }
  }
  return sorted(set);
}

std::vector<StateMatrix> distinct_state_matrices_unreduced(int k) {
  require_draw_size(k);
  const auto rows = all_row_vectors(k);
  MatrixSet set;
  for (const auto& top : rows) {
    for (const auto& bottom : rows) set.insert(matrix_from_rows(k, top, bottom));
  }
  return sorted(set);
}

namespace {

std::vector<IdentityState> states_from(const std::vector<StateMatrix>& mats,
                                       int alphabet) {
  if (alphabet < 1) throw InputError("alphabet size I must be at least 1");
  std::vector<IdentityState> out;
  for (const auto& m : mats) {
    if (m.nonzero_columns() <= alphabet) {
      out.push_back(make_identity_state(m.with_alphabet_size(alphabet)));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return representative_before(a.representative, b.representative);
  });
  return out;
}

}  // namespace

std::vector<IdentityState> enumerate_states(int k, int alphabet) {
  require_draw_size(k);
  if (alphabet < 1) throw InputError("alphabet size I must be at least 1");
  return states_from(canonical_state_matrices(k), alphabet);
}

std::vector<IdentityState> enumerate_states_serial(int k, int alphabet) {
  require_draw_size(k);
  if (alphabet < 1) throw InputError("alphabet size I must be at least 1");
  return states_from(canonical_state_matrices_serial(k), alphabet);
}

std::size_t state_count(int k, int alphabet) {
  require_draw_size(k);
  if (alphabet < 1) throw InputError("alphabet size I must be at least 1");
  const auto mats = canonical_state_matrices(k);
  return static_cast<std::size_t>(
      std::count_if(mats.begin(), mats.end(), [alphabet](const StateMatrix& m) {
        return m.nonzero_columns() <= alphabet;
      }));
}

}  // namespace idstates
