#ifndef UAFORGE_IO_HPP_
#define UAFORGE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "uaforge/algebra.hpp"
#include "uaforge/partition.hpp"

namespace uaforge {

  // Algebra file format:
  //   {"name": str, "size": int, "elements": [str]?,
  //    "operations": [{"symbol": str, "arity": int, "table": [int]}]}
  // Keys are written sorted, so save(load(save(a))) reproduces the bytes.
  std::string   algebra_to_json(FiniteAlgebra const& alg);
  FiniteAlgebra algebra_from_json(std::string_view text);

  FiniteAlgebra load_algebra(std::filesystem::path const& path);
  void          save_algebra(FiniteAlgebra const& alg, std::filesystem::path const& path);

  // Block list, blocks sorted by least element: [[0],[1,2]].
  std::string partition_to_json(Partition const& p);
  Partition   partition_from_json(std::string_view text, std::size_t size);

}  // namespace uaforge

#endif  // UAFORGE_IO_HPP_
