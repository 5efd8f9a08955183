// Regenerates the bundled synthetic test images.
//
//   make_corpus <output-dir>

#include <filesystem>
#include <iostream>

#include "tclab/corpus.hpp"
#include "tclab/error.hpp"
#include "tclab/image.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir(argv[1]);
  try {
    std::filesystem::create_directories(dir);
    tclab::write_pgm_file(tclab::corpus::gradient_edges(512, 512, tclab::corpus::kGradientSeed),
                          (dir / "gradient_edges.pgm").string());
    tclab::write_pgm_file(tclab::corpus::texture(512, 512, tclab::corpus::kTextureSeed),
                          (dir / "texture.pgm").string());
  } catch (const std::exception& e) {
    std::cerr << "make_corpus: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
