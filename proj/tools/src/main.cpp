#include <iostream>

#include "openbook_cli/app.hpp"

int main(int argc, char** argv) { return openbook::cli::cli_main(argc, argv, std::cout, std::cerr); }
