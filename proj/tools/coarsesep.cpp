#include <iostream>

#include "coarsesep/app.hpp"

int main(int argc, char** argv) { return coarsesep::app::run(argc, argv, std::cout, std::cerr); }
