#pragma once

#include <vector>

#include "gshift/mapping.hpp"
#include "oracle.hpp"

inline oracle::Tuple to_tuple(const gshift::Mapping& m) {
  oracle::Tuple t(m.universe(), oracle::kBottom);
  for (gshift::Vertex v = 0; v < m.universe(); ++v)
    if (auto w = m(v)) t[v] = static_cast<int>(*w);
  return t;
}

inline gshift::Mapping from_tuple(const oracle::Tuple& t) {
  std::vector<gshift::Image> images;
  for (int w : t)
    images.push_back(w == oracle::kBottom ? gshift::Image{} : gshift::Image{gshift::Vertex(w)});
  return gshift::Mapping::full(t.size(), std::move(images));
}

/// 1-based image list helper: {2, 0, 1} means 1->2, 2->bottom, 3->1.
inline gshift::Mapping full_map(std::vector<int> one_based) {
  oracle::Tuple t;
  for (int w : one_based) t.push_back(w == 0 ? oracle::kBottom : w - 1);
  return from_tuple(t);
}
