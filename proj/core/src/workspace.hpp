#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "brinkstab/spectral.hpp"

namespace brinkstab::detail {

/// Immutable per-order collocation workspace, shared across solves.
struct GridWorkspace {
  SpectralGrid grid;
  BcRecipe dirichlet;
  BcRecipe clamped;
};

inline const GridWorkspace& workspace(int N) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GridWorkspace>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) {
    auto ws = std::make_unique<GridWorkspace>();
    ws->grid = build_grid(N);
    ws->dirichlet = apply_bc(ws->grid, BcKind::dirichlet);
    ws->clamped = apply_bc(ws->grid, BcKind::clamped);
    it = cache.emplace(N, std::move(ws)).first;
  }
  return *it->second;
}

}  // namespace brinkstab::detail
