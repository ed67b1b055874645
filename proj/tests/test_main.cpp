#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstring>
#include <vector>

#include "test_support.hpp"

namespace testsupport {
std::string aao_binary;
std::string model_dir;
}  // namespace testsupport

int main(int argc, char** argv) {
    std::vector<char*> passthrough;
    for (int i = 0; i < argc; ++i) {
        if (std::strncmp(argv[i], "--aao-bin=", 10) == 0) {
            testsupport::aao_binary = argv[i] + 10;
        } else if (std::strncmp(argv[i], "--model-dir=", 12) == 0) {
            testsupport::model_dir = argv[i] + 12;
        } else {
            passthrough.push_back(argv[i]);
        }
    }
    doctest::Context context(static_cast<int>(passthrough.size()), passthrough.data());
    return context.run();
}
