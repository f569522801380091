#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpcocycle/metric.hpp"

namespace lpcocycle {

/// A (possibly partial) injective vertex map, meant to be distance preserving.
///
/// Truncated spaces only carry partial translations; points outside the
/// domain map to kNone and act() refuses them with OutOfDomain.
class Isometry {
 public:
  static constexpr Vertex kNone = -1;

  Isometry() = default;

  /// image[x] is g.x or kNone. Throws invalid_input when two points share an
  /// image or an image is out of range.
  explicit Isometry(std::vector<Vertex> image, std::string label = {});

  static Isometry identity(std::size_t n, std::string label = "e");

  std::size_t size() const noexcept { return image_.size(); }
  bool defined(Vertex x) const noexcept {
    return x >= 0 && static_cast<std::size_t>(x) < image_.size() && image_[x] != kNone;
  }
  bool is_total() const noexcept { return total_; }

  Vertex act(Vertex x) const;
  Vertex operator()(Vertex x) const { return act(x); }

  std::span<const Vertex> image() const noexcept { return image_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  friend bool operator==(const Isometry& a, const Isometry& b) noexcept { return a.image_ == b.image_; }

 private:
  std::vector<Vertex> image_;
  std::string label_;
  bool total_ = true;
};

/// x -> g(h(x)), defined where both steps are.
Isometry compose(const Isometry& g, const Isometry& h);

/// Partial inverse on the image of g.
Isometry inverse(const Isometry& g);

struct IsometryCheck {
  bool ok = true;
  std::uint64_t pairs_checked = 0;
  Vertex x = 0;  // first failing pair
  Vertex y = 0;
};

/// d(g.x, g.y) == d(x, y) over all pairs of domain points on which g is
/// defined. An empty domain means every vertex.
IsometryCheck check_isometry(const MetricTable& m, const Isometry& g, std::span<const Vertex> domain = {});

}  // namespace lpcocycle
