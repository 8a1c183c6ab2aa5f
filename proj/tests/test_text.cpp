#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sumscope/error.hpp"
#include "sumscope/text.hpp"

using namespace sumscope;

TEST_CASE("tokenize") {
  CHECK(tokenize("The quick-brown fox.") == Tokens{"the", "quick", "brown", "fox"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("A  a A.") == Tokens{"a", "a", "a"});
  CHECK(tokenize("  ... -- !! ").empty());
  CHECK(tokenize("(x) \"quoted\" end,") == Tokens{"x", "quoted", "end"});
  // interior punctuation other than hyphens survives
  CHECK(tokenize("don't e.g. 3.14") == Tokens{"don't", "e.g", "3.14"});
  // no-break space and em space separate tokens; other UTF-8 passes through
  CHECK(tokenize("a\xC2\xA0" "b\xE2\x80\x83" "c") == Tokens{"a", "b", "c"});
  CHECK(tokenize("Caf\xC3\xA9") == Tokens{"caf\xC3\xA9"});
  CHECK(tokenize("line\none\ttwo") == Tokens{"line", "one", "two"});
}

TEST_CASE("segment_sentences") {
  CHECK(segment_sentences("A cat. A dog.") == std::vector<std::string>{"A cat.", "A dog."});
  CHECK(segment_sentences("See Fig. 2 here.") == std::vector<std::string>{"See Fig. 2 here."});
  CHECK(segment_sentences("One sentence") == std::vector<std::string>{"One sentence"});
  CHECK(segment_sentences("We use e.g. Tf-Idf. Then stop!") ==
        std::vector<std::string>{"We use e.g. Tf-Idf.", "Then stop!"});
  CHECK(segment_sentences("Smith et al. Proposed it. Yes?") ==
        std::vector<std::string>{"Smith et al. Proposed it.", "Yes?"});
  CHECK(segment_sentences("first part\n\nsecond part") == std::vector<std::string>{"first part", "second part"});
  CHECK(segment_sentences("value 3.5 holds. lower case next") ==
        std::vector<std::string>{"value 3.5 holds. lower case next"});
  CHECK(segment_sentences("").empty());
}

TEST_CASE("join") {
  const Tokens t{"a", "b", "c"};
  CHECK(join(t) == "a b c");
  CHECK(join(t, "|") == "a|b|c");
  CHECK(join(Tokens{}).empty());
}

TEST_CASE("stopwords") {
  const auto en = StopwordSet::english();
  CHECK(en.size() == 179);
  CHECK(en.contains("the"));
  CHECK(en.contains("and"));
  CHECK(en.contains("wouldn't"));
  CHECK_FALSE(en.contains("apples"));

  const std::string path = "sumscope_test_stopwords.txt";
  {
    std::ofstream out(path);
    out << "# comment\n\nFoo\nbar\n";
  }
  const auto custom = StopwordSet::from_file(path);
  CHECK(custom.size() == 2);
  CHECK(custom.contains("foo"));
  std::remove(path.c_str());
  CHECK_THROWS_AS(StopwordSet::from_file("no/such/stopwords.txt"), IoError);
}

TEST_CASE("porter stemmer") {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"}, {"ponies", "poni"},     {"ties", "ti"},         {"caress", "caress"},
      {"cats", "cat"},        {"feed", "feed"},       {"agreed", "agre"},     {"plastered", "plaster"},
      {"bled", "bled"},       {"motoring", "motor"},  {"sing", "sing"},       {"conflated", "conflat"},
      {"troubled", "troubl"}, {"sized", "size"},      {"hopping", "hop"},     {"tanned", "tan"},
      {"falling", "fall"},    {"hissing", "hiss"},    {"fizzed", "fizz"},     {"failing", "fail"},
      {"filing", "file"},     {"happy", "happi"},     {"sky", "sky"},         {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"}, {"valenci", "valenc"}, {"digitizer", "digit"},
      {"generalizations", "gener"}, {"hopeful", "hope"}, {"goodness", "good"}, {"triplicate", "triplic"},
      {"revival", "reviv"},   {"adjustable", "adjust"}, {"effective", "effect"}, {"probate", "probat"},
      {"rate", "rate"},       {"cease", "ceas"},      {"controll", "control"}, {"roll", "roll"},
      {"running", "run"},     {"summarization", "summar"}, {"a", "a"},     {"is", "is"}};
  for (const auto& [word, stem] : cases) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
  CHECK(porter_stem("3.14") == "3.14");
  CHECK(stem_tokens(Tokens{"running", "cats"}) == Tokens{"run", "cat"});
}
