#include <fstream>
#include <iostream>

#include "commands.hpp"

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  amalgam::cli::Outcome out = amalgam::cli::execute(args);
  std::cout << out.output;
  std::cerr << out.error;
  if (out.certificate) {
    std::ofstream file(out.certificate_path, std::ios::binary);
    file << out.certificate->render();
    if (!file) {
      std::cerr << "cannot write " << out.certificate_path << '\n';
      return amalgam::cli::kInputError;
    }
    std::cout << "certificate: " << out.certificate_path << '\n';
  }
  return out.exit_code;
}
