#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acb/structure_file.hpp"

namespace acb::corpus {

// Every *.acs file in `dir`, sorted by file name.
std::vector<cli::StructureFile> load_dir(const std::string& dir);
std::string read_file(const std::string& path);

// J'(p) = T J(T^{-1} p) T^{-1} for a constant complex-linear T (row-major).
ACStructure conjugate_linear(const ACStructure& J, const std::vector<Cq>& T, const std::vector<Cq>& Tinv);

// J = i Id + lambda p (K pbar)^T with K antisymmetric: satisfies the line condition.
ACStructure line_family(int n, const Polynomial& lambda, const std::vector<Cq>& K);
// Pullback of the standard structure by p -> p + h(z_s) e_r: only A_rs = 2i dh/dzbar_s.
ACStructure pullback_family(int n, int r, int s, const Polynomial& h);

// Randomized structures mixing the families above, linear conjugation and
// diagonal rescaling of `bases`. Every result satisfies J^2 = -Id exactly.
std::vector<cli::StructureFile> random_structures(int count, std::uint64_t seed,
                                                  const std::vector<cli::StructureFile>& bases = {});

} // namespace acb::corpus
