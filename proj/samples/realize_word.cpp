// Builds a rational symmetric matrix for an apr word and prints it.
#include <iostream>

#include "aprseq/aprseq.hpp"

int main(int argc, char** argv) {
  const std::string word = argc > 1 ? argv[1] : "ASN";
  try {
    const auto seq = aprseq::CharSeq::parse(word);
    const auto r = aprseq::realize(seq);
    std::cout << aprseq::format_matrix(r.matrix);
    std::cout << "apr " << aprseq::apr_sequence(r.matrix).word() << " via " << r.path << "\n";
  } catch (const aprseq::RejectedSequence& e) {
    std::cout << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
