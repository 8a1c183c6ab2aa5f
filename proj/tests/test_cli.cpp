#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "sumscope/cli.hpp"
#include "sumscope/corpus.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = SUMSCOPE_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sumscope");
  std::ostringstream out;
  std::ostringstream err;
  const int code = sumscope::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<json> jsonl(const std::string& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

// Scratch directory under the test working directory.
std::string scratch(const std::string& name) {
  fs::create_directories("cli_scratch");
  return "cli_scratch/" + name;
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"profile"}).code == 64);
  CHECK(run({"--help"}).code == 0);
  const auto bad = run({"oracle", "--input", fixture("toy_corpus.jsonl"), "--out", scratch("o.jsonl"), "--rouge", "R9"});
  CHECK(bad.code == 64);
  CHECK(bad.err.find("error=usage") != std::string::npos);
}

TEST_CASE("profile") {
  const auto out = scratch("profile.json");
  const auto r = run({"profile", "--input", fixture("toy_corpus.jsonl"), "--out", out});
  REQUIRE(r.code == 0);
  const auto report = json::parse(slurp(out));
  CHECK(report["record_count"] == 3);
  CHECK(report["correlation"]["matrix"].size() == 6);
  const auto records = slurp(out + ".records.csv");
  CHECK(records.rfind("doc_id,doc_tokens", 0) == 0);
  CHECK(std::count(records.begin(), records.end(), '\n') == 4);

  const auto first = slurp(out);
  REQUIRE(run({"profile", "--input", fixture("toy_corpus.jsonl"), "--out", out, "--workers", "3"}).code == 0);
  CHECK(slurp(out) == first);
  CHECK(slurp(out + ".records.csv") == records);

  const auto csv = scratch("profile.csv");
  REQUIRE(run({"profile", "--input", fixture("toy_corpus.jsonl"), "--out", csv, "--format", "csv"}).code == 0);
  CHECK(slurp(csv).rfind("metric,defined_count,mean", 0) == 0);

  // correlate over the per-record CSV
  const auto corr = scratch("corr.json");
  CHECK(run({"correlate", "--input", out + ".records.csv", "--out", corr}).code == 0);
  CHECK(json::parse(slurp(corr))["metrics"].size() == 6);
}

TEST_CASE("profile errors") {
  const auto missing = run({"profile", "--input", "no/such/corpus.jsonl", "--out", scratch("x.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("no/such/corpus.jsonl") != std::string::npos);

  const auto corrupt = scratch("corrupt.jsonl");
  {
    std::ofstream out(corrupt);
    const auto lines = slurp(fixture("toy_corpus.jsonl"));
    out << lines << lines;  // six good lines
    out << "{\"article_id\": \"bad\", \n";
  }
  const auto r = run({"profile", "--input", corrupt, "--out", scratch("c.json")});
  CHECK(r.code == 3);
  CHECK(r.err.find("line=7") != std::string::npos);
}

TEST_CASE("summarize") {
  const auto a = scratch("summ_a.jsonl");
  const auto b = scratch("summ_b.jsonl");
  REQUIRE(run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", a, "--bias", "discourse"}).code == 0);
  REQUIRE(run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", b, "--bias", "discourse", "--workers",
               "2"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto rows = jsonl(a);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["id"] == "toy-1");

  const auto small = scratch("summ_small.jsonl");
  REQUIRE(run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", small, "--budget", "12"}).code == 0);
  for (const auto& row : jsonl(small)) {
    std::size_t tokens = 0;
    for (const auto& s : row["summary_sentences"]) tokens += sumscope::tokenize(s.get<std::string>()).size();
    CHECK(tokens <= 12);
    const auto& idx = row["indices"];
    for (std::size_t k = 1; k < idx.size(); ++k) CHECK(idx[k - 1] < idx[k]);
  }

  CHECK(run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", a, "--encoder", "embed"}).code == 64);
  const auto emb = scratch("summ_emb.jsonl");
  REQUIRE(run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", emb, "--encoder", "embed",
               "--embeddings", fixture("toy_embeddings.jsonl"), "--bias", "none"}).code == 0);
  CHECK(jsonl(emb).size() == 3);

  const auto tuned = scratch("summ_tuned.jsonl");
  const auto t = run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", tuned, "--bias", "discourse",
                      "--tune-on", fixture("toy_corpus.jsonl")});
  CHECK(t.code == 0);
  CHECK(t.err.find("alpha=") != std::string::npos);
}

TEST_CASE("summarize alignment error") {
  const auto bad = scratch("bad_emb.jsonl");
  {
    std::ofstream out(bad);
    out << R"({"id":"toy-1","dim":2,"sentences":[[1,0]]})" << "\n";
  }
  const auto r = run({"summarize", "--input", fixture("toy_corpus.jsonl"), "--out", scratch("s.jsonl"), "--encoder",
                      "embed", "--embeddings", bad});
  CHECK(r.code == 3);
  CHECK(r.err.find("error=alignment") != std::string::npos);
}

TEST_CASE("oracle") {
  const auto out = scratch("oracle.jsonl");
  REQUIRE(run({"oracle", "--input", fixture("toy_corpus.jsonl"), "--out", out, "--rouge", "R1"}).code == 0);
  const auto rows = jsonl(out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["indices"] == json::array({0, 1}));
  CHECK(rows[0]["summary_sentences"] == json::array({"a b.", "c d."}));

  const auto r1 = scratch("oracle_r1.jsonl");
  const auto r2 = scratch("oracle_r2.jsonl");
  for (const auto& path : {r1, r2}) {
    REQUIRE(run({"oracle", "--input", fixture("toy_corpus.jsonl"), "--out", path, "--order", "random", "--seed", "17",
                 "--rouge", "L"}).code == 0);
  }
  CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("evaluate") {
  const auto out = scratch("eval.json");
  const auto r = run({"evaluate", "--candidates", fixture("toy_candidates.jsonl"), "--input",
                      fixture("toy_corpus.jsonl"), "--out", out, "--dims", "rouge,informativeness,coherence,soft",
                      "--nsp", fixture("toy_nsp.jsonl"), "--token-embeddings", fixture("toy_ref_tokens.jsonl"),
                      "--ref-token-embeddings", fixture("toy_ref_tokens.jsonl")});
  REQUIRE(r.code == 0);
  const auto report = json::parse(slurp(out));
  CHECK(report["count"] == 3);
  CHECK(report["mean"]["rouge1_f1"] == 1.0);
  CHECK(report["mean"]["rougeL_f1"] == 1.0);
  CHECK(report["mean"]["soft_overlap"].get<double>() == doctest::Approx(1.0));
  // toy-1 has one summary sentence (coherence 0); the others have two with NSP 1 (0.5 each)
  CHECK(report["candidates"][1]["coherence"] == 0.5);
  CHECK(report["candidates"][0]["coherence"] == 0.0);

  const auto csv = scratch("eval.csv");
  REQUIRE(run({"evaluate", "--candidates", fixture("toy_candidates.jsonl"), "--input", fixture("toy_corpus.jsonl"),
               "--out", csv, "--format", "csv"}).code == 0);
  const auto text = slurp(csv);
  CHECK(text.rfind("id,rouge1_precision", 0) == 0);
  CHECK(text.find("\n__mean__,1,1,1,") != std::string::npos);

  CHECK(run({"evaluate", "--candidates", fixture("toy_candidates.jsonl"), "--input", fixture("toy_corpus.jsonl"),
             "--out", out, "--dims", "coherence"}).code == 64);
  CHECK(run({"evaluate", "--candidates", fixture("toy_candidates.jsonl"), "--input", fixture("toy_corpus.jsonl"),
             "--out", out, "--dims", "soft"}).code == 64);

  const auto stray = scratch("stray.jsonl");
  {
    std::ofstream o(stray);
    o << R"({"id":"ghost","summary_sentences":["boo."]})" << "\n";
  }
  const auto u = run({"evaluate", "--candidates", stray, "--input", fixture("toy_corpus.jsonl"), "--out", out});
  CHECK(u.code == 3);
  CHECK(u.err.find("ghost") != std::string::npos);
}

TEST_CASE("correlate") {
  const auto header = std::string("doc_id,doc_tokens,doc_sentences,summary_tokens,summary_sentences,"
                                   "compression_token,compression_sent,coverage,density,redundancy,uniformity\n");
  const auto path = scratch("metrics.csv");
  {
    std::ofstream o(path);
    o << header << "a,10,2,5,1,1,1,0.5,1,,0.3\n"
      << "b,20,4,5,1,2,2,0.5,2,,0.4\n"
      << "c,30,6,5,1,3,3,0.5,3,,0.2\n";
  }
  const auto out = scratch("corr.json");
  REQUIRE(run({"correlate", "--input", path, "--out", out}).code == 0);
  const auto m = json::parse(slurp(out))["matrix"];
  CHECK(m[0][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m[0][2].is_null());  // constant coverage
  CHECK(m[4][4].is_null());  // redundancy never defined

  const auto single = scratch("single.csv");
  {
    std::ofstream o(single);
    o << header << "a,10,2,5,1,1,1,0.5,1,,0.3\n";
  }
  const auto r = run({"correlate", "--input", single, "--out", out});
  CHECK(r.code == 3);
  CHECK(r.err.find("degenerate_input") != std::string::npos);
}
