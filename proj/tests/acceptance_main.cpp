#include <groupalg/acceptance.hpp>

#include <iostream>

int main() { return groupalg::run_acceptance(std::cout) == 0 ? 0 : 1; }
