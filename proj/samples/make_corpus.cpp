// Writes the built-in synthetic benchmark suite as structured CSV files,
// one per dataset, so the command-line tool has something to work on.
//
//   make_corpus <dir> [lines] [seed]

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "loghet.hpp"

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <dir> [lines] [seed]\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  const std::size_t lines = argc > 2 ? std::stoul(argv[2]) : 2000;
  const std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 1;
  std::filesystem::create_directories(dir);
  for (const auto& ds : loghet::synthetic::benchmark_suite(lines, seed)) {
    const auto path = dir / (ds.name + "_2k.log_structured.csv");
    loghet::write_dataset(ds, path);
    std::cout << path.string() << "\n";
  }
  return 0;
}
