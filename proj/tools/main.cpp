#include "commands.hpp"

int main(int argc, char** argv) { return nconvex::cli::run(argc, argv); }
