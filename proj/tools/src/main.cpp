#include <iostream>
#include <string>
#include <vector>

#include "photonstat/cli.hpp"

int main(int argc, char** argv) {
    return photonstat::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
