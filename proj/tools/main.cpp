#include <iostream>
#include <string>
#include <vector>

#include "dcilink/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(argc > 1 ? argc - 1 : 0);
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dcilink::run_cli(args, std::cout, std::cerr);
}
