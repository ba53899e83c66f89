#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "autocomplete/ingest.hpp"
#include "autocomplete/transform.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace autocomplete;

TEST_CASE("remove_stopwords") {
    const auto sw = default_stopwords();
    CHECK(sw == std::set<std::string, std::less<>>{"a", "the", "have", "has", "of"});
    CHECK(remove_stopwords("the cat", sw) == "cat");
    CHECK(remove_stopwords("", sw) == "");
    CHECK(remove_stopwords("a the of", sw) == "");
    CHECK(remove_stopwords("  king   of  the hill ", sw) == "king hill");
    CHECK(remove_stopwords("theater ofa", sw) == "theater ofa");
}

TEST_CASE("strip_to_consonants") {
    CHECK(strip_to_consonants("auto complete") == "tcmplt");
    CHECK(strip_to_consonants("") == "");
    CHECK(strip_to_consonants("a.e i-o_u!") == "");
    CHECK(strip_to_consonants("r2-d2 y") == "r2d2y");
}

TEST_CASE("soundex_digits") {
    CHECK(soundex_digits("rtjdl") == "63234");
    CHECK(soundex_digits("") == "");
    CHECK(soundex_digits("bfpv") == "1111");
    CHECK(soundex_digits("cgjkqsxz") == "22222222");
    CHECK(soundex_digits("mnhwy") == "55");
    CHECK(soundex_digits("b7r") == "176");
}

TEST_CASE("collapse_runs") {
    CHECK(collapse_runs("rttjdddl") == "rtjdl");
    CHECK(collapse_runs("abc") == "abc");
    CHECK(collapse_runs("1111") == "1");
    CHECK(collapse_runs("") == "");
}

TEST_CASE("fuzzy_key composes stages in order") {
    const TransformConfig plain;
    CHECK(fuzzy_key("auto complete", plain) == "tcmplt");
    CHECK(fuzzy_key("rttjdddl", plain) == "rtjdl");
    CHECK(fuzzy_key("the", plain) == "");

    const TransformConfig sx = TransformConfig::full(true);
    // "bf" collapses after coding since both letters are class 1.
    CHECK(fuzzy_key("bf", sx) == "1");
    CHECK(fuzzy_key("rttjdddl", sx) == "63234");
}

TEST_CASE("cumulative stage configs") {
    const auto without = TransformConfig::cumulative(TransformConfig::full(false));
    REQUIRE(without.size() == 3);
    CHECK(fuzzy_key("the Ca t", without[0]) == "Ca t");
    CHECK(fuzzy_key("the cat", without[0]) == "cat");
    CHECK(fuzzy_key("the catt", without[1]) == "ctt");
    CHECK(fuzzy_key("the catt", without[2]) == "ct");

    const auto with = TransformConfig::cumulative(TransformConfig::full(true));
    REQUIRE(with.size() == 4);
    CHECK(fuzzy_key("the catt", with[3]) == "23");
}

TEST_CASE("load_stopwords") {
    const auto path = std::filesystem::temp_directory_path() / "ac_stopwords_test.txt";
    {
        std::ofstream out(path);
        out << "# comment\nand\n  or \n\nthe\n";
    }
    const auto words = load_stopwords(path);
    CHECK(words == std::set<std::string, std::less<>>{"and", "or", "the"});
    std::filesystem::remove(path);
    CHECK_THROWS(load_stopwords(path));
}

TEST_CASE("build_fuzzy_index") {
    const TransformConfig plain;
    const auto one = build_fuzzy_index(std::vector<PhraseEntry>{{"rttjdddl", 5}}, plain);
    REQUIRE(one.keys.size() == 1);
    CHECK(one.keys.entry(0) == PhraseEntry{"rtjdl", 5});
    CHECK(one.originals[0] == std::vector<Suggestion>{{"rttjdddl", 5}});

    CHECK(build_fuzzy_index({}, plain).keys.empty());

    const auto cats =
        build_fuzzy_index(std::vector<PhraseEntry>{{"cat", 3}, {"caat", 7}}, plain);
    REQUIRE(cats.keys.size() == 1);
    CHECK(cats.keys.entry(0) == PhraseEntry{"ct", 7});
    CHECK(cats.originals[0] == std::vector<Suggestion>{{"caat", 7}, {"cat", 3}});

    const auto dropped =
        build_fuzzy_index(std::vector<PhraseEntry>{{"the", 1}, {"a", 2}, {"dog", 3}}, plain);
    CHECK(dropped.keys.size() == 1);
    CHECK(dropped.original_count() == 1);
}

TEST_CASE("fuzzy_top_k") {
    const TransformConfig plain;
    const auto one = build_fuzzy_index(std::vector<PhraseEntry>{{"rttjdddl", 5}}, plain);
    CHECK(fuzzy_top_k(one, "rtt", 1) == std::vector<Suggestion>{{"rttjdddl", 5}});
    CHECK(fuzzy_top_k(one, "zz", 1).empty());
    CHECK(fuzzy_top_k(one, "the", 1).empty());
    CHECK(fuzzy_top_k(one, "rtt", 0).empty());
}

TEST_CASE("fuzzy_top_k matches the brute-force reference") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 1 + rng() % 400;
        const auto entries = testing::random_corpus(
            rng, {.n = n, .alphabet = "abte d", .max_length = 8, .weight_max = 9});
        const TransformConfig config = TransformConfig::full(round % 2 == 1);
        const auto findex = build_fuzzy_index(entries, config);
        const oracle::FuzzyBrute brute(entries, config);

        std::size_t with_key = 0;
        for (const auto& e : entries) with_key += !fuzzy_key(e.text, config).empty();
        CHECK(findex.original_count() == with_key);

        for (const char* q : {"b", "t", "d", "bt", "ba", "tdb", "a b", "dd", "e", "the"}) {
            for (std::size_t k : {1, 3, 8}) {
                REQUIRE(fuzzy_top_k(findex, q, k) == brute.top_k(q, k));
            }
        }
    }
}

TEST_CASE("multi_stage_top_k") {
    const std::vector<PhraseEntry> entries{{"the cat", 4}, {"catt", 6}, {"kite", 2}};
    const auto stages = build_stage_indexes(entries, TransformConfig::full(true));
    REQUIRE(stages.size() == 4);

    SUBCASE("single stage equals fuzzy_top_k") {
        const std::span<const FuzzyIndex> first(stages.data(), 1);
        for (const char* q : {"c", "cat", "k", "the"}) {
            CHECK(multi_stage_top_k(first, q, 5) == fuzzy_top_k(stages[0], q, 5));
        }
    }
    SUBCASE("originals found by several stages appear once") {
        // Every stage finds "catt"; only the soundex stage reaches "kite" (c, k -> 2).
        const auto got = multi_stage_top_k(stages, "cat", 10);
        CHECK(got == std::vector<Suggestion>{{"catt", 6}, {"the cat", 4}, {"kite", 2}});
    }
    CHECK(multi_stage_top_k(stages, "cat", 0).empty());
}

TEST_CASE("transform properties on random strings") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(0, 24);
    std::uniform_int_distribution<int> byte(0, 127);
    for (int i = 0; i < 2000; ++i) {
        std::string s(len(rng), ' ');
        for (char& c : s) c = static_cast<char>(byte(rng));
        const std::string once = collapse_runs(s);
        CHECK(collapse_runs(once) == once);
        const std::string stripped = strip_to_consonants(s);
        CHECK(stripped.find_first_of("aeiouAEIOU \t\n.,!-_") == std::string::npos);
        const std::string coded = soundex_digits(strip_to_consonants(normalize_text(s)));
        CHECK(coded.find_first_not_of("0123456789") == std::string::npos);
        const TransformConfig plain;
        const std::string key = fuzzy_key(normalize_text(s), plain);
        CHECK(fuzzy_key(key, plain) == key);
    }
}
