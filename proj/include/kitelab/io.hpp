#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kitelab/core.hpp"
#include "kitelab/kite.hpp"

namespace kitelab {

/// Line-oriented text format:
///
///   # comment
///   pea                 (or gpea)
///   size 6
///   zero 0
///   top 5               (pea only)
///   labels 0 a a' b b' 1   (optional)
///   table
///   0 1 2 3 4 5         (row a: entry b is a+b, '-' undefined)
///   ...
///   perm lambda 0 1 2   (optional; position j holds lambda(j))
///   perm rho 2 0 1
struct AlgebraFile
{
  enum class Kind
  {
    Gpea,
    Pea
  };

  Kind kind = Kind::Gpea;
  PartialTable table;
  Elem zero = 0;
  std::optional<Elem> top;
  std::vector<std::string> labels;
  std::optional<Permutation> lambda;
  std::optional<Permutation> rho;

  bool operator==(AlgebraFile const &) const = default;
};

/// Syntax only; throws ParseError with line and column.
AlgebraFile parse_algebra_file(std::string_view text);

AlgebraFile read_algebra_file(std::filesystem::path const &path);

struct LoadedAlgebra
{
  AlgebraFile file;
  Gpea gpea;
  std::optional<Pea> pea;
};

/// Validates the parsed table; throws AxiomError naming the violated axiom.
LoadedAlgebra validate(AlgebraFile file);

/// Throws UsageError for a pea file.
Gpea parse_gpea(std::string_view text);
/// Throws UsageError for a gpea file.
Pea parse_pea(std::string_view text);

std::string emit_algebra(AlgebraFile const &file);
std::string emit_algebra(Gpea const &gpea);
std::string emit_algebra(Pea const &pea);

} // namespace kitelab
