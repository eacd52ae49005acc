#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "httplib.h"
#include "rftdist/error.hpp"
#include "rftdist/fetch.hpp"

using namespace rftdist;

namespace {

class FakeSource : public seq::SequenceSource {
 public:
  std::map<std::string, std::string> entries;
  int calls = 0;

  std::string fetch_fasta(const std::string& accession) override {
    ++calls;
    const auto it = entries.find(accession);
    if (it == entries.end()) throw Error("not found: " + accession);
    return it->second;
  }
};

class FetchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("rftdist-fetch-" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(FetchTest, EmptyListIsEmpty) {
  EXPECT_TRUE(seq::fetch_accessions({}, dir_, nullptr).empty());
}

TEST_F(FetchTest, ColdCacheOfflineNamesMissingIds) {
  const std::vector<std::string> ids{"KC891137", "KC891134"};
  try {
    seq::fetch_accessions(ids, dir_, nullptr);
    FAIL() << "expected UnavailableError";
  } catch (const UnavailableError& e) {
    EXPECT_EQ(e.missing(), ids);
    EXPECT_NE(std::string(e.what()).find("KC891137"), std::string::npos);
  }
}

TEST_F(FetchTest, MissFetchesStoresAndThenServesFromCache) {
  FakeSource source;
  source.entries["KC891137"] = ">KC891137.1 Influenza A virus NA\nacgtACGT\nGG\n";
  const std::vector<std::string> ids{"KC891137"};
  const auto first = seq::fetch_accessions(ids, dir_, &source);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0].id, "KC891137");
  EXPECT_EQ(first[0].bases, "ACGTACGTGG");
  EXPECT_EQ(source.calls, 1);
  EXPECT_TRUE(std::filesystem::exists(seq::cache_path(dir_, "KC891137")));

  const auto second = seq::fetch_accessions(ids, dir_, &source);
  EXPECT_EQ(source.calls, 1);
  EXPECT_EQ(second[0].bases, first[0].bases);
  const auto offline = seq::fetch_accessions(ids, dir_, nullptr);
  EXPECT_EQ(offline[0].bases, first[0].bases);
}

TEST_F(FetchTest, PartialFailureListsOnlyMisses) {
  FakeSource source;
  source.entries["AB000001"] = ">AB000001\nACGT\n";
  source.entries["AB000003"] = "<html>not fasta</html>";
  const std::vector<std::string> ids{"AB000001", "AB000002", "AB000003"};
  try {
    seq::fetch_accessions(ids, dir_, &source);
    FAIL() << "expected UnavailableError";
  } catch (const UnavailableError& e) {
    EXPECT_EQ(e.missing(), (std::vector<std::string>{"AB000002", "AB000003"}));
  }
  EXPECT_TRUE(std::filesystem::exists(seq::cache_path(dir_, "AB000001")));
}

TEST_F(FetchTest, RejectsPathLikeAccessions) {
  EXPECT_THROW(seq::cache_path(dir_, "../etc/passwd"), InvalidArgument);
  EXPECT_THROW(seq::cache_path(dir_, ""), InvalidArgument);
}

TEST_F(FetchTest, FirstCompletedWriteIsKept) {
  EXPECT_TRUE(seq::store_in_cache(dir_, "X1", ">X1\nAAAA\n"));
  EXPECT_FALSE(seq::store_in_cache(dir_, "X1", ">X1\nCCCC\n"));
  std::ifstream in(seq::cache_path(dir_, "X1"));
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, ">X1\nAAAA\n");

  std::atomic<int> winners{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      if (seq::store_in_cache(dir_, "X2", ">X2\n" + std::string(100, "ACGT"[t % 4]) + "\n")) {
        ++winners;
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(winners.load(), 1);
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir_)) ++entries;
  EXPECT_EQ(entries, 2u);
}

TEST_F(FetchTest, EnvironmentOverrides) {
  ::setenv(seq::kCacheDirEnv, "/tmp/override-cache", 1);
  EXPECT_EQ(seq::resolve_cache_dir("/fallback"), "/tmp/override-cache");
  ::unsetenv(seq::kCacheDirEnv);
  EXPECT_EQ(seq::resolve_cache_dir("/fallback"), "/fallback");
  ::setenv(seq::kEndpointEnv, "http://localhost:1/e", 1);
  EXPECT_EQ(seq::resolve_endpoint(), "http://localhost:1/e");
  ::unsetenv(seq::kEndpointEnv);
  EXPECT_EQ(seq::resolve_endpoint(), seq::kDefaultFetchEndpoint);
}

TEST_F(FetchTest, HttpSourceAgainstLocalServer) {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Get("/efetch", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    const auto id = req.get_param_value("id");
    if (req.get_param_value("db") != "nuccore" || req.get_param_value("rettype") != "fasta" ||
        id != "KC891137") {
      res.status = 400;
      return;
    }
    res.set_content(">KC891137.1 test record\nACGTTGCA\n", "text/plain");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  seq::FetchOptions options;
  options.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/efetch";
  options.timeout = std::chrono::seconds(5);
  const std::vector<std::string> ids{"KC891137"};
  const auto recs = seq::fetch_accessions(ids, dir_, options);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].id, "KC891137");
  EXPECT_EQ(recs[0].bases, "ACGTTGCA");

  const std::vector<std::string> bad{"KC000000"};
  EXPECT_THROW(seq::fetch_accessions(bad, dir_, options), UnavailableError);
  EXPECT_EQ(hits.load(), 2);

  options.allow_network = false;
  EXPECT_THROW(seq::fetch_accessions(bad, dir_, options), UnavailableError);
  EXPECT_EQ(hits.load(), 2);

  server.stop();
  worker.join();
}
