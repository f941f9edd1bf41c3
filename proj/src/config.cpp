#include "perc/config.hpp"

#include <bit>
#include <ostream>
#include <stdexcept>
#include <string>

namespace perc {

const char* to_string(Color c) { return c == Color::Blue ? "blue" : "yellow"; }

Configuration::Configuration(std::shared_ptr<const Region> region, std::vector<std::uint64_t> words,
                             double p, std::uint64_t seed)
    : region_(std::move(region)), words_(std::move(words)), p_(p), seed_(seed) {
  if (!region_) throw std::invalid_argument("configuration needs a region");
  if (words_.size() != (region_->size() + 63) / 64)
    throw std::invalid_argument("colour array does not match region size");
}

std::size_t Configuration::blue_count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::shared_ptr<const Region> make_region(const RegionSpec& spec) {
  return std::make_shared<const Region>(spec);
}

Configuration sample_config(std::shared_ptr<const Region> region, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<std::uint64_t> words((region->size() + 63) / 64, 0);
  const auto sites = region->sites();
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (site_uniform(seed, sites[i]) < p) words[i >> 6] |= std::uint64_t{1} << (i & 63);
  return Configuration(std::move(region), std::move(words), p, seed);
}

Configuration complement(const Configuration& config) {
  std::vector<std::uint64_t> words(config.words().begin(), config.words().end());
  for (auto& w : words) w = ~w;
  const std::size_t tail = config.size() & 63;
  if (tail != 0) words.back() &= (std::uint64_t{1} << tail) - 1;
  return Configuration(config.region_ptr(), std::move(words), 1.0 - config.p(), config.seed());
}

Configuration flip_site(const Configuration& config, SiteCoord site) {
  const SiteId id = config.region().id_of(site);
  if (id == kNoSite)
    throw std::invalid_argument("site (" + std::to_string(site.q) + "," + std::to_string(site.r) +
                                ") is not in " + config.region().spec().to_string());
  std::vector<std::uint64_t> words(config.words().begin(), config.words().end());
  words[static_cast<std::size_t>(id) >> 6] ^= std::uint64_t{1} << (id & 63);
  return Configuration(config.region_ptr(), std::move(words), config.p(), config.seed());
}

Configuration config_from_mask(std::shared_ptr<const Region> region, std::uint64_t mask) {
  if (region->size() > 64) throw std::invalid_argument("mask colourings need at most 64 sites");
  std::vector<std::uint64_t> words(region->size() == 0 ? 0 : 1, mask);
  return Configuration(std::move(region), std::move(words), 0.5, mask);
}

void require_enumerable(const Region& region, std::size_t budget) {
  if (region.size() > budget)
    throw BudgetExceeded(region.spec().to_string() + " has " + std::to_string(region.size()) +
                         " sites; exhaustive enumeration is limited to " + std::to_string(budget));
}

ConfigStream::ConfigStream(std::shared_ptr<const Region> region) : region_(std::move(region)) {
  require_enumerable(*region_);
}

ConfigStream enumerate_configs(std::shared_ptr<const Region> region) {
  return ConfigStream(std::move(region));
}

void write_config_dump(std::ostream& os, const Configuration& config) {
  const auto sites = config.region().sites();
  for (std::size_t i = 0; i < sites.size(); ++i)
    os << sites[i].q << ' ' << sites[i].r << ' ' << to_string(config.color(static_cast<SiteId>(i)))
       << '\n';
}

}  // namespace perc
