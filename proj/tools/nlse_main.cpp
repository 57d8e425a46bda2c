#include <string>
#include <vector>

#include "nlse/cli.hpp"

int main(int argc, char** argv) {
    return nlse::cli_dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
