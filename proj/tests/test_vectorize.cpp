#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sumscope/error.hpp"
#include "sumscope/vectorize.hpp"

using namespace sumscope;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::ofstream out(name);
  out << content;
  return name;
}

std::vector<Tokens> sentences(std::initializer_list<const char*> raw) {
  std::vector<Tokens> out;
  for (const char* s : raw) out.push_back(tokenize(s));
  return out;
}

}  // namespace

TEST_CASE("cosine") {
  const Eigen::Vector2d e1(1, 0);
  const Eigen::Vector2d e2(0, 1);
  CHECK(cosine(e1, e2) == 0.0);
  CHECK(cosine(e1, Eigen::Vector2d(3, 0)) == doctest::Approx(1.0));
  CHECK(cosine(Eigen::Vector2d(1, 1), e1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(cosine(Eigen::Vector2d(0, 0), e1) == 0.0);
  CHECK_THROWS_AS(cosine(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Ones(3)), DimensionError);
  const Eigen::Vector3f f(1, 2, 2);
  CHECK(cosine(f, f) == doctest::Approx(1.0f));
}

TEST_CASE("tfidf idf and vocabulary") {
  const auto sents = sentences({"graph model", "graph edge", "graph node"});
  const auto model = fit_tfidf(sents, 0.01);
  CHECK(*model.idf_of("graph") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*model.idf_of("edge") == doctest::Approx(std::log(4.0 / 2.0) + 1.0));
  CHECK(model.vocabulary().size() == 4);
  CHECK(model.vocabulary().begin()->first == "edge");
  CHECK_FALSE(model.idf_of("the").has_value());
}

TEST_CASE("tfidf min_df threshold") {
  std::vector<Tokens> sents(199, Tokens{"common"});
  sents.push_back(Tokens{"common", "rare"});
  const auto model = fit_tfidf(sents, 0.01);
  CHECK_FALSE(model.idf_of("rare").has_value());
  CHECK(model.idf_of("common").has_value());
  sents.push_back(Tokens{"rare"});
  sents.push_back(Tokens{"rare"});  // df 3 of 202
  CHECK(fit_tfidf(sents, 0.01).idf_of("rare").has_value());
}

TEST_CASE("tfidf vectors") {
  const auto sents = sentences({"graph model", "graph edge", "edge node"});
  const auto model = fit_tfidf(sents, 0.01);
  const auto v = model.vector(Tokens{"node"});
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(v(model.vocabulary().at("node")) == doctest::Approx(1.0));
  CHECK(model.vector(Tokens{"zzz", "the"}).isZero());
  CHECK(model.vector(Tokens{"graph", "edge", "graph"}) == model.vector(Tokens{"graph", "graph", "edge"}));
  const auto mixed = model.vector(Tokens{"graph", "node"});
  const double g = *model.idf_of("graph");
  const double n = *model.idf_of("node");
  CHECK(mixed(model.vocabulary().at("graph")) == doctest::Approx(g / std::hypot(g, n)));
}

TEST_CASE("tfidf builder options") {
  TfidfOptions keep;
  keep.remove_stopwords = false;
  TfidfBuilder builder(keep);
  builder.add_sentence(Tokens{"the", "graph"});
  CHECK(builder.build().idf_of("the").has_value());
  TfidfBuilder empty;
  CHECK_THROWS_AS(empty.build(), DegenerateInput);
  TfidfOptions bad;
  bad.min_df = 0.0;
  CHECK_THROWS_AS(TfidfBuilder{bad}, DegenerateInput);

  Section a;
  a.sentences = {make_sentence("x y"), make_sentence("x z")};
  const Document doc("d", {a});
  TfidfOptions per_doc;
  per_doc.document_level_df = true;
  TfidfBuilder docs(per_doc);
  docs.add_document(doc);
  docs.add_document(Document("e", {Section{std::nullopt, {make_sentence("w")}, 0}}));
  CHECK(docs.unit_count() == 2);
  CHECK(*docs.build().idf_of("x") == doctest::Approx(std::log(3.0 / 2.0) + 1.0));
}

TEST_CASE("truncated svd small exact") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  const auto p = truncated_svd(id, 1);
  CHECK(p.singular_values(0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(truncated_svd(id, 0), InvalidRank);
  CHECK_THROWS_AS(truncated_svd(id, 3), InvalidRank);

  const Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(5, 1, 5);
  const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(4, -1, 2);
  const Eigen::MatrixXd rank1 = u * w.transpose();
  const auto r1 = truncated_svd(rank1, 1);
  const Eigen::MatrixXd recon = rank1 * r1.components * r1.components.transpose();
  CHECK((recon - rank1).norm() < 1e-8);

  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(6, 4);
  const auto full = truncated_svd(m, 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    CHECK(full.apply(m.row(i).transpose()).norm() == doctest::Approx(m.row(i).norm()).epsilon(1e-6));
  }
  CHECK_THROWS_AS(full.apply(Eigen::VectorXd::Ones(3)), DimensionError);
}

TEST_CASE("randomized svd matches eigen-decomposition oracle") {
  const Eigen::Index m = 120;
  const Eigen::Index n = 90;
  std::srand(3);
  const Eigen::MatrixXd left = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(m, n)).householderQ() *
                               Eigen::MatrixXd::Identity(m, n);
  const Eigen::MatrixXd right = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(n, n)).householderQ();
  Eigen::VectorXd s(n);
  for (Eigen::Index k = 0; k < n; ++k) s(k) = std::pow(0.7, static_cast<double>(k));
  const Eigen::MatrixXd a = left * s.asDiagonal() * right.transpose();

  // Oracle: eigenvalues of A^T A are the squared singular values.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a.transpose() * a);
  const auto p = truncated_svd(a, 5);
  REQUIRE(p.rank() == 5);
  for (Eigen::Index k = 0; k < 5; ++k) {
    const double expect = std::sqrt(eig.eigenvalues()(n - 1 - k));
    CHECK(p.singular_values(k) == doctest::Approx(expect).epsilon(1e-8));
    const double align = std::abs(p.components.col(k).dot(eig.eigenvectors().col(n - 1 - k)));
    CHECK(align == doctest::Approx(1.0).epsilon(1e-6));
  }
  const Eigen::SparseMatrix<double> sparse = a.sparseView();
  const auto ps = truncated_svd(sparse, 5);
  CHECK((ps.singular_values - p.singular_values).norm() < 1e-10);
  // same seed, same result
  const auto again = truncated_svd(a, 5);
  CHECK(again.components == p.components);
}

TEST_CASE("projection installs on the model") {
  const auto sents = sentences({"graph model node", "graph edge", "edge node weight", "model weight"});
  auto model = fit_tfidf(sents, 0.01);
  fit_projection(model, sents, 2);
  REQUIRE(model.projection().has_value());
  const auto v = model.vector(sents[0]);
  CHECK(v.size() == 2);
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_projection(model, sents, 50), InvalidRank);
}

TEST_CASE("embedding lines") {
  const auto meta = parse_embedding_line(R"({"_meta":{"model":"m","dim":2}})");
  CHECK_FALSE(meta.has_value());
  const auto row = parse_embedding_line(R"({"id":"a","dim":2,"sentences":[[1,0],[0,1]]})");
  REQUIRE(row.has_value());
  CHECK(row->sentences.rows() == 2);
  CHECK_FALSE(row->has_tokens());
  const auto tok = parse_embedding_line(R"({"id":"a","dim":2,"tokens":[[[1,0],[0,1]],[[1,1]]]})");
  REQUIRE(tok->has_tokens());
  CHECK(tok->tokens[0].rows() == 2);
  CHECK(tok->tokens[1].rows() == 1);
  CHECK_THROWS_AS(parse_embedding_line(R"({"id":"a","dim":2,"sentences":[[1,0,0]]})"), FormatError);
  CHECK_THROWS_AS(parse_embedding_line(R"({"id":"a","dim":0,"sentences":[]})"), FormatError);
  CHECK_THROWS_AS(parse_embedding_line(R"({"id":"a","dim":1,"sentences":[["x"]]})"), FormatError);
  CHECK_THROWS_AS(parse_embedding_line(R"({"id":"a","dim":2})"), FormatError);
  CHECK_THROWS(parse_embedding_line("{"));
}

TEST_CASE("embedding table and index") {
  std::string two_docs = R"({"_meta":{"model":"synthetic","dim":4,"mode":"eval"}})" "\n";
  for (const char* id : {"d1", "d2"}) {
    two_docs += std::string(R"({"id":")") + id +
                R"(","dim":4,"sentences":[[1,0,0,0],[0,1,0,0],[0,0,1,0.5]]})" "\n";
  }
  const auto path = write_temp("sumscope_test_emb.jsonl", two_docs);
  const auto table = load_embeddings(path);
  CHECK(table.docs.size() == 2);
  CHECK(table.dim == 4);
  CHECK(table.docs.at("d2").sentences.rows() == 3);

  EmbeddingIndex index(path);
  CHECK(index.size() == 2);
  CHECK(index.contains("d1"));
  CHECK(index.get("d2").sentences == table.docs.at("d2").sentences);
  CHECK(index.get("d1").sentences(2, 3) == 0.5);
  CHECK_THROWS_AS(index.get("zz"), AlignmentError);

  Section sec;
  sec.sentences = {make_sentence("a"), make_sentence("b"), make_sentence("c")};
  const Document doc("d1", {sec});
  CHECK_NOTHROW(check_alignment(table.docs.at("d1"), doc));
  const Document short_doc("d1", {Section{std::nullopt, {make_sentence("a")}, 0}});
  CHECK_THROWS_AS(check_alignment(table.docs.at("d1"), short_doc), AlignmentError);
  std::remove(path.c_str());

  const auto mixed = write_temp("sumscope_test_mixed.jsonl", R"({"id":"a","dim":4,"sentences":[[1,2,3,4]]})" "\n"
                                                             R"({"id":"b","dim":5,"sentences":[[1,2,3,4,5]]})" "\n");
  CHECK_THROWS_AS(load_embeddings(mixed), FormatError);
  CHECK_THROWS_AS(EmbeddingIndex{mixed}, FormatError);
  std::remove(mixed.c_str());

  const auto empty = write_temp("sumscope_test_empty.jsonl", "");
  CHECK(load_embeddings(empty).docs.empty());
  std::remove(empty.c_str());
  CHECK_THROWS_AS(load_embeddings("no/such/embeddings.jsonl"), IoError);
}

TEST_CASE("token alignment") {
  const auto emb = *parse_embedding_line(R"({"id":"a","dim":2,"tokens":[[[1,0],[0,1]]]})");
  CHECK_NOTHROW(check_token_alignment(emb, {make_sentence("two words")}));
  CHECK_THROWS_AS(check_token_alignment(emb, {make_sentence("three more words")}), AlignmentError);
  CHECK_THROWS_AS(check_token_alignment(emb, {make_sentence("a b"), make_sentence("c")}), AlignmentError);
}
