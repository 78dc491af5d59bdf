#include <jpstrat/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return jps::cli::run(std::move(args));
}
