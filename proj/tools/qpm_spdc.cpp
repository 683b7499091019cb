#include <iostream>

#include <qpmspdc/cli.hpp>

int main(int argc, char** argv) {
    return qpmspdc::cli::run(argc, argv, std::cout, std::cerr);
}
