#include "lgt/lattice.hpp"

#include <string>

#include "lgt/common.hpp"

namespace lgt {

LatticeSpec::LatticeSpec(int lx, int ly, bool periodic_x, bool periodic_y, bool include_matter, bool staggered)
    : lx_(lx), ly_(ly), periodic_x_(periodic_x), periodic_y_(periodic_y), include_matter_(include_matter) {
  if (lx < 1 || ly < 1) throw Error("lattice extents must be positive");
  if ((periodic_x && lx < 2) || (periodic_y && ly < 2))
    throw Error("a periodic direction needs at least two sites");
  if (include_matter && staggered && ((periodic_x && lx % 2) || (periodic_y && ly % 2)))
    throw Error("staggered fermions on a periodic direction need an even extent");

  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) vertices_.push_back({x, y, (x + y) % 2});

  link_of_.assign(vertices_.size(), {-1, -1});
  for (int v = 0; v < num_vertices(); ++v) {
    const int x = vertices_[v].x, y = vertices_[v].y;
    if (x + 1 < lx || periodic_x) {
      link_of_[v][0] = num_links();
      links_.push_back({v, vertex_index((x + 1) % lx, y), Direction::X});
    }
    if (y + 1 < ly || periodic_y) {
      link_of_[v][1] = num_links();
      links_.push_back({v, vertex_index(x, (y + 1) % ly), Direction::Y});
    }
  }

  for (int v = 0; v < num_vertices(); ++v) {
    const int l1 = link_of_[v][0];
    const int l4 = link_of_[v][1];
    if (l1 < 0 || l4 < 0) continue;
    const int l2 = link_of_[links_[l1].end][1];
    const int l3 = link_of_[links_[l4].end][0];
    if (l2 < 0 || l3 < 0) continue;
    plaquettes_.push_back({v, {l1, l2, l3, l4}});
  }
}

int LatticeSpec::link_from(int v, Direction dir) const {
  return link_of_.at(static_cast<std::size_t>(v))[static_cast<int>(dir)];
}

std::vector<int> LatticeSpec::outgoing(int v) const {
  std::vector<int> out;
  for (int l = 0; l < num_links(); ++l)
    if (links_[l].start == v) out.push_back(l);
  return out;
}

std::vector<int> LatticeSpec::incoming(int v) const {
  std::vector<int> out;
  for (int l = 0; l < num_links(); ++l)
    if (links_[l].end == v) out.push_back(l);
  return out;
}

}  // namespace lgt
