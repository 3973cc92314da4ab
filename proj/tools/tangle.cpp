#include "tangle/app/cli.hpp"

int main(int argc, char** argv) { return tangle::app::cli_main(argc, argv); }
