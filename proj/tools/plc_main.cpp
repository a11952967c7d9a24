#include "plc/cli.hpp"

int main(int argc, char** argv) {
    return plc::cli::run(argc, argv);
}
