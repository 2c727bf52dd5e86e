#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return hml::cli::app_main(argc, argv, std::cout, std::cerr); }
