#ifndef PERC_CONFIG_HPP
#define PERC_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "perc/lattice.hpp"
#include "perc/rng.hpp"

namespace perc {

/// Blue = open, Yellow = closed.
enum class Color : std::uint8_t { Blue, Yellow };

constexpr Color swap(Color c) { return c == Color::Blue ? Color::Yellow : Color::Blue; }
const char* to_string(Color c);

/// Largest region accepted by exhaustive enumeration.
inline constexpr std::size_t kEnumerationBudget = 24;

/// Non-owning read access to a colouring. Either backed by a bit array
/// (bit set = blue) or evaluated lazily from (seed, p) via site_uniform, the
/// same rule sample_config uses, so both paths give identical colours.
class ColorView {
 public:
  static ColorView bits(const Region& region, const std::uint64_t* words) {
    ColorView v;
    v.region_ = &region;
    v.words_ = words;
    return v;
  }
  static ColorView lazy(const Region& region, std::uint64_t seed, double p) {
    ColorView v;
    v.region_ = &region;
    v.seed_ = seed;
    v.p_ = p;
    return v;
  }

  const Region& region() const { return *region_; }

  bool is_blue(SiteId id) const {
    if (words_) return (words_[static_cast<std::size_t>(id) >> 6] >> (id & 63)) & 1u;
    return site_uniform(seed_, region_->site(id)) < p_;
  }
  bool has(SiteId id, Color c) const { return is_blue(id) == (c == Color::Blue); }
  Color color(SiteId id) const { return is_blue(id) ? Color::Blue : Color::Yellow; }

 private:
  ColorView() = default;
  const Region* region_ = nullptr;
  const std::uint64_t* words_ = nullptr;
  std::uint64_t seed_ = 0;
  double p_ = 0.0;
};

/// Immutable two-colouring of a region's sites, one bit per site.
class Configuration {
 public:
  Configuration(std::shared_ptr<const Region> region, std::vector<std::uint64_t> words, double p,
                std::uint64_t seed);

  const Region& region() const { return *region_; }
  const std::shared_ptr<const Region>& region_ptr() const { return region_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return region_->size(); }

  bool is_blue(SiteId id) const { return (words_[static_cast<std::size_t>(id) >> 6] >> (id & 63)) & 1u; }
  Color color(SiteId id) const { return is_blue(id) ? Color::Blue : Color::Yellow; }
  std::size_t blue_count() const;
  ColorView view() const { return ColorView::bits(*region_, words_.data()); }
  std::span<const std::uint64_t> words() const { return words_; }

  /// Same region and same colours (p and seed are provenance only).
  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.region_ == b.region_ && a.words_ == b.words_;
  }

 private:
  std::shared_ptr<const Region> region_;
  std::vector<std::uint64_t> words_;
  double p_;
  std::uint64_t seed_;
};

std::shared_ptr<const Region> make_region(const RegionSpec& spec);

/// Each site blue independently with probability p; bit-identical for a given
/// (region, p, seed) regardless of evaluation order.
Configuration sample_config(std::shared_ptr<const Region> region, double p, std::uint64_t seed);

Configuration complement(const Configuration& config);
Configuration flip_site(const Configuration& config, SiteCoord site);

/// Colouring whose site i is blue iff bit i of mask is set (regions <= 64 sites).
Configuration config_from_mask(std::shared_ptr<const Region> region, std::uint64_t mask);

/// All 2^n colourings of a region in binary-counter order (bit i = site i blue).
class ConfigStream {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Configuration;
    using difference_type = std::ptrdiff_t;

    iterator(const ConfigStream* stream, std::uint64_t mask) : stream_(stream), mask_(mask) {}
    Configuration operator*() const { return config_from_mask(stream_->region_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    const ConfigStream* stream_;
    std::uint64_t mask_;
  };

  explicit ConfigStream(std::shared_ptr<const Region> region);
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count()}; }
  std::uint64_t count() const { return std::uint64_t{1} << region_->size(); }

 private:
  std::shared_ptr<const Region> region_;
};

/// Throws BudgetExceeded when the region has more than kEnumerationBudget sites.
ConfigStream enumerate_configs(std::shared_ptr<const Region> region);

struct BudgetExceeded : std::length_error {
  using std::length_error::length_error;
};
void require_enumerable(const Region& region, std::size_t budget = kEnumerationBudget);

/// Debug dump: one line per site, "q r blue" or "q r yellow", in site-id order.
void write_config_dump(std::ostream& os, const Configuration& config);

}  // namespace perc

#endif  // PERC_CONFIG_HPP
