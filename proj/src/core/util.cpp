#include "core/util.hpp"

#include <charconv>

namespace rslab {

std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? (uint128)(-(v + 1)) + 1 : (uint128)v;
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = char('0' + (int)(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, buf + 48);
    return neg ? "-" + s : s;
}

uint64_t fnv1a64(const void* data, size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace rslab
