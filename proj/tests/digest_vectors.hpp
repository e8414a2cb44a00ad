#pragma once

#include <string>
#include <vector>

// Reference digest vectors computed with an independent implementation and
// frozen. Inputs are UTF-8 byte strings.

namespace testvec {

struct DigestVector {
    std::string input;
    std::string md5;
    std::string sha1;
};

inline const std::vector<DigestVector>& digest_vectors() {
    static const std::vector<DigestVector> vectors = {
        {"", "d41d8cd98f00b204e9800998ecf8427e", "da39a3ee5e6b4b0d3255bfef95601890afd80709"},
        {"a", "0cc175b9c0f1b6a831c399e269772661", "86f7e437faa5a7fce15d1ddcb9eaeaea377667b8"},
        {"abc", "900150983cd24fb0d6963f7d28e17f72", "a9993e364706816aba3e25717850c26c9cd0d89d"},
        {"message digest", "f96b697d7cb7938d525a2f31aaf161d0",
         "c12252ceda8be8994d5fa0290a47231c1d16aae3"},
        {"abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b",
         "32d10c7b8cf96570ca04ce37f2a19d84240d3a89"},
        {"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789",
         "d174ab98d277d9f5a5611c2c9f419d9f", "761c457bf73b14d27e9e9265c46f4b4dda11f940"},
        {"12345678901234567890123456789012345678901234567890123456789012345678901234567890",
         "57edf4a22be3c955ac49da2e2107b67a", "50abf5706a150990a08b2c5ea40fa0e585554732"},
        {"The quick brown fox jumps over the lazy dog", "9e107d9d372bb6826bd81d3542a419d6",
         "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12"},
        {"The quick brown fox jumps over the lazy dog.", "e4d909c290d0fb1ca068ffaddf22cbd0",
         "408d94384216f890ff7a0c3528e8bed1e0b01621"},
        {"opensesame", "e6078b9b1aac915d11b9fd59791030bf",
         "17618f01a3a21b911c925bcb525a1d21abd30673"},
        {"secret", "5ebe2294ecd0e0f08eab7690d2a6ee69",
         "e5e9fa1ba31ecd1ae84f75caaa474f3a663f05f4"},
        {"n3", "4443aee183b279f76a95c13c7f5bca0d", "26c2ce28d0df94c010c5255203b885cba81b9018"},
        {"hello world\n", "6f5902ac237024bdd0c176cb93063dc4",
         "22596363b3de40b06f981fb85d82312e8c0ed511"},
        {"WWW2006 Workshop on Models of Trust for the Web",
         "58e7455f44c13621fa2d92e75e11bf85", "d8bc698f8b6dcb605c4a3089a1f680e71b46fad5"},
        {std::string(55, 'x'), "04364420e25c512fd958a70738aa8f72",
         "cef734ba81a024479e09eb5a75b6ddae62e6abf1"},
        {std::string(56, 'x'), "668a72d5ba17f08e62dabcafad6db14b",
         "901305367c259952f4e7af8323f480d59f81335b"},
        {std::string(63, 'x'), "7dc2ca208106a2f703567bdff99d8981",
         "0ddc4e0cccd9a12850deb5abb0853a4425559fec"},
        {std::string(64, 'x'), "c1bb4f81d892b2d57947682aeb252456",
         "bb2fa3ee7afb9f54c6dfb5d021f14b1ffe40c163"},
        {std::string(65, 'x'), "1bc932052302d074bdec39795fe00cf6",
         "78c741ddc482e4cdf8c474a0876347a0905b6233"},
        {"\xc3\xa9t\xc3\xa9", "deaf6a1e9612a4d8c221e68ee23d58d2",
         "64d0cbc5f02c3904ee4f439ca476480b67b5e3e1"},
    };
    return vectors;
}

}  // namespace testvec
