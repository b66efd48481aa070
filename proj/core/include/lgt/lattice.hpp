#pragma once

#include <array>
#include <vector>

namespace lgt {

enum class Direction { X = 0, Y = 1 };

struct Vertex {
  int x = 0;
  int y = 0;
  int parity = 0;  // (x + y) mod 2
};

/// Oriented from `start` to `end` = start + k̂.
struct Link {
  int start = 0;
  int end = 0;
  Direction dir = Direction::X;
};

/// Links of one plaquette at n: U1 = (n,x), U2 = (n+x,y), U3 = (n+y,x), U4 = (n,y).
struct Plaquette {
  int corner = 0;
  std::array<int, 4> links{};
};

/// Square lattice. Vertex index y·Lx + x; links listed vertex by vertex,
/// x-link before y-link.
class LatticeSpec {
 public:
  LatticeSpec(int lx, int ly, bool periodic_x, bool periodic_y, bool include_matter, bool staggered = true);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  bool periodic_x() const { return periodic_x_; }
  bool periodic_y() const { return periodic_y_; }
  bool include_matter() const { return include_matter_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_links() const { return static_cast<int>(links_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Link>& links() const { return links_; }
  const Vertex& vertex(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  const Link& link(int l) const { return links_.at(static_cast<std::size_t>(l)); }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  int vertex_index(int x, int y) const { return y * lx_ + x; }
  /// Link leaving `v` in direction `dir`, or -1.
  int link_from(int v, Direction dir) const;
  std::vector<int> outgoing(int v) const;
  std::vector<int> incoming(int v) const;

 private:
  int lx_, ly_;
  bool periodic_x_, periodic_y_, include_matter_;
  std::vector<Vertex> vertices_;
  std::vector<Link> links_;
  std::vector<std::array<int, 2>> link_of_;  // per vertex, per direction
  std::vector<Plaquette> plaquettes_;
};

}  // namespace lgt
