#include <tiling/cli.hpp>

#include <iostream>

int main(int argc, char ** argv)
{
    return tiling::cli::run(argc, argv, std::cout, std::cerr);
}
