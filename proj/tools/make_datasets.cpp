// Writes the generated benchmark shapes used by the acceptance suite as labeled CSV.
#include "lgbqpc/synthetic.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

void write(const lgbqpc::Dataset& d, const std::filesystem::path& path) {
    std::ofstream f{path, std::ios::binary};
    f << "x,y,class\n";
    char buf[64];
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%d\n", d(i, 0), d(i, 1), d.labels()[i]);
        f << buf;
    }
    std::cout << "wrote " << path.string() << " (" << d.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
    std::filesystem::create_directories(dir);
    write(lgbqpc::synthetic::two_spirals(200, 0.15, 7), dir / "two_spirals.csv");
    write(lgbqpc::synthetic::two_moons(150, 0.06, 11), dir / "two_moons.csv");
    return 0;
}
