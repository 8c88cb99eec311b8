#include "scarforge/cli.hpp"

int main(int argc, char** argv) {
    return scarforge::cli::run(argc, argv);
}
