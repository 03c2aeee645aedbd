#include <cstdio>

int main() {
    std::puts("anyangle: placeholder");
    return 0;
}
