// Lists the apr words attained by 4x4 symmetric matrices over GF(2).
#include <iostream>

#include "aprseq/aprseq.hpp"

int main() {
  const auto rep = aprseq::apr_census(aprseq::FieldSpec::prime(2), 4);
  for (const auto& [word, stat] : rep.apr) std::cout << word << " " << stat.count << "\n";
  std::cout << rep.violations.size() << " violations\n";
  return rep.ok() ? 0 : 1;
}
