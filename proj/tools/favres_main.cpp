#include "favres/cli.hpp"

int main(int argc, char** argv) {
    return favres::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
