#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlm/grid.hpp"

namespace tlm {

/// Relative tail bound: |f| on the outer boundary of the box must stay
/// below this fraction of max |f|.
inline constexpr double kTailRule = 1e-8;

/// Max |f| over nodes within two cells of the box boundary, divided by
/// max |f|. Zero for the zero function.
double tail_ratio(const GridFunction& f);
bool satisfies_tail_rule(const GridFunction& f);

struct CorpusMember {
  std::string label;
  GridFunction f;
};

struct SequenceMember {
  std::string label;
  std::vector<GridFunction> levels;
};

/// Deterministic test inputs. Member i depends only on (seed, i), so a
/// corpus of size 2M starts with the corpus of size M.
class Corpus {
 public:
  /// Cycles through Gaussians, modulated Gaussians at a level below
  /// `top_level`, ball indicators and windowed random spectral sums.
  static Corpus functions(const Grid& grid, std::uint64_t seed,
                          std::size_t size, int top_level);
  /// Families (f_nu)_{nu = 0..levels-1}: a Gaussian window times
  /// eta_{nu, n+2} convolved with per-level white noise.
  static Corpus sequences(const Grid& grid, std::uint64_t seed,
                          std::size_t size, int levels);

  std::uint64_t seed() const { return seed_; }
  const Grid& grid() const { return grid_; }
  const std::vector<CorpusMember>& members() const { return members_; }
  const std::vector<SequenceMember>& sequence_members() const {
    return sequences_;
  }
  std::size_t size() const {
    return members_.empty() ? sequences_.size() : members_.size();
  }

 private:
  Corpus(const Grid& grid, std::uint64_t seed) : grid_(grid), seed_(seed) {}

  Grid grid_;
  std::uint64_t seed_;
  std::vector<CorpusMember> members_;
  std::vector<SequenceMember> sequences_;
};

/// |f_nu| per level, the nonnegative sequences used by the Hardy probe.
std::vector<std::vector<double>> magnitudes(const SequenceMember& member);

}  // namespace tlm
