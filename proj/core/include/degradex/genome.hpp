#pragma once

#include <string>
#include <string_view>

namespace degradex {

inline constexpr char kAlphabet[4] = {'A', 'C', 'G', 'T'};

/** One sequence record: id token, free-text description, bases over {A,C,G,T}. */
struct Genome {
    std::string id;
    std::string description;
    std::string bases;

    std::size_t length() const { return bases.size(); }
};

/** 0..3 for A,C,G,T; -1 otherwise. */
inline int base_index(char c) {
    switch (c) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
    }
    return -1;
}

inline char complement(char c) {
    switch (c) {
        case 'A': return 'T';
        case 'T': return 'A';
        case 'C': return 'G';
        case 'G': return 'C';
    }
    return c;
}

/** rc(s)[i] = complement(s[L-1-i]); an involution on valid sequences. */
std::string reverse_complement(std::string_view sequence);

}  // namespace degradex
