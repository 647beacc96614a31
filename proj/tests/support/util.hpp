#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcv/errors.hpp"
#include "bcv/manifold.hpp"

namespace testutil {

// bare coordinate chart, enough context to parse/evaluate loose expressions
inline bcv::ManifoldSpec vars_spec(std::vector<std::string> names) {
  bcv::ManifoldSpec s;
  s.name = "expr";
  s.dim = static_cast<int>(names.size());
  s.coords = std::move(names);
  s.domain.assign(s.coords.size(), bcv::Interval{-1.2, 1.2});
  return s;
}

template <class F>
bcv::errc code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const bcv::error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a bcv::error, none was thrown");
}

}  // namespace testutil
