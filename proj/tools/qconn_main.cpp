#include "qconn/runner.hpp"

int main(int argc, char** argv) { return qconn::cli::run(argc, argv); }
