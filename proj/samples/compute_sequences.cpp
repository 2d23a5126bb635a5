// Prints the apr/epr/qpr-sequences, rank and ap-rank of a matrix file.
#include <iostream>

#include "aprseq/aprseq.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: compute_sequences <matrix-file>\n";
    return 2;
  }
  try {
    const auto b = aprseq::load_matrix(argv[1]);
    const aprseq::MinorEvaluator ev(b);
    if (b.order() >= 2) std::cout << "apr " << aprseq::apr_sequence(ev).word() << "\n";
    std::cout << "epr " << aprseq::epr_sequence(ev).word() << "\n";
    std::cout << "qpr " << aprseq::qpr_sequence(ev).word() << "\n";
    std::cout << "rank " << ev.rank() << "\naprank " << aprseq::ap_rank(ev) << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
