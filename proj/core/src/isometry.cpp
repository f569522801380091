#include "lpcocycle/isometry.hpp"

#include <numeric>

namespace lpcocycle {

Isometry::Isometry(std::vector<Vertex> image, std::string label) : image_(std::move(image)), label_(std::move(label)) {
  std::vector<char> hit(image_.size(), 0);
  for (std::size_t x = 0; x < image_.size(); ++x) {
    const Vertex y = image_[x];
    if (y == kNone) {
      total_ = false;
      continue;
    }
    if (y < 0 || static_cast<std::size_t>(y) >= image_.size()) {
      throw Error(ErrorCode::invalid_input, "permutation image " + std::to_string(y) + " out of range");
    }
    if (hit[y]) throw Error(ErrorCode::invalid_input, "permutation is not injective at image " + std::to_string(y));
    hit[y] = 1;
  }
}

Isometry Isometry::identity(std::size_t n, std::string label) {
  std::vector<Vertex> image(n);
  std::iota(image.begin(), image.end(), 0);
  return Isometry(std::move(image), std::move(label));
}

Vertex Isometry::act(Vertex x) const {
  if (!defined(x)) {
    throw Error(ErrorCode::out_of_domain,
                "vertex " + std::to_string(x) + " is outside the domain of " + (label_.empty() ? "the isometry" : label_));
  }
  return image_[x];
}

Isometry compose(const Isometry& g, const Isometry& h) {
  if (g.size() != h.size()) throw Error(ErrorCode::invalid_input, "composing isometries of different spaces");
  std::vector<Vertex> image(h.size(), Isometry::kNone);
  for (std::size_t x = 0; x < h.size(); ++x) {
    const Vertex y = h.image()[x];
    if (y != Isometry::kNone) image[x] = g.image()[y];
  }
  std::string label = g.label().empty() || h.label().empty() ? std::string{} : g.label() + "*" + h.label();
  return Isometry(std::move(image), std::move(label));
}

Isometry inverse(const Isometry& g) {
  std::vector<Vertex> image(g.size(), Isometry::kNone);
  for (std::size_t x = 0; x < g.size(); ++x) {
    const Vertex y = g.image()[x];
    if (y != Isometry::kNone) image[y] = static_cast<Vertex>(x);
  }
  return Isometry(std::move(image), g.label().empty() ? std::string{} : g.label() + "^-1");
}

IsometryCheck check_isometry(const MetricTable& m, const Isometry& g, std::span<const Vertex> domain) {
  if (g.size() != m.size()) throw Error(ErrorCode::invalid_input, "isometry and metric have different sizes");
  std::vector<Vertex> points;
  if (domain.empty()) {
    for (Vertex x = 0; static_cast<std::size_t>(x) < m.size(); ++x) {
      if (g.defined(x)) points.push_back(x);
    }
  } else {
    for (Vertex x : domain) {
      if (g.defined(x)) points.push_back(x);
    }
  }
  IsometryCheck result;
  for (Vertex x : points) {
    const auto rx = m.row(x);
    const auto rgx = m.row(g.act(x));
    for (Vertex y : points) {
      ++result.pairs_checked;
      if (rx[y] != rgx[g.act(y)]) {
        result.ok = false;
        result.x = x;
        result.y = y;
        return result;
      }
    }
  }
  return result;
}

}  // namespace lpcocycle
