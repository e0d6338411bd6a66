// Apache License, Version 2.0, refer to LICENSE.txt

#include <bnscore/cli.hpp>

int main(int argc, char** argv) {
    return bnscore::cli::run(argc, argv, std::cout, std::cerr);
}
