#include <iostream>

#include <malloc.h>

#include <cobord/cli.hpp>

int main(int argc, char **argv)
{
    // Large polynomials churn the heap; keep freed pages around.
    mallopt(M_MMAP_MAX, 0);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
    return cobord::cli::run(argc, argv, std::cout, std::cerr);
}
