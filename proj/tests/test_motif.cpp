#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sgf/motif.hpp"

using sgf::Motif;
using sgf::Rational;

namespace {

Motif named(const char* name) { return *sgf::named_motif(name); }

Motif random_motif(std::mt19937_64& rng, int k, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<sgf::MotifEdge> edges;
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < j; ++i) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Motif(k, edges);
}

std::vector<int> random_permutation(std::mt19937_64& rng, int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Representatives of the isomorphism classes of connected graphs on k
// vertices, found by pairwise brute-force isomorphism within (edges, degrees)
// buckets.
std::vector<Motif> connected_classes(int k) {
  std::map<std::vector<int>, std::vector<Motif>> buckets;
  for (const Motif& m : oracle::all_graphs(k)) {
    if (!oracle::connected(m)) continue;
    std::vector<int> key{m.edge_count()};
    for (int v = 0; v < k; ++v) key.push_back(m.degree(v));
    std::sort(key.begin() + 1, key.end());
    auto& bucket = buckets[key];
    const bool seen = std::any_of(bucket.begin(), bucket.end(),
                                  [&](const Motif& r) { return oracle::isomorphic(r, m); });
    if (!seen) bucket.push_back(m);
  }
  std::vector<Motif> out;
  for (auto& [key, bucket] : buckets) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

// Exhaustive max of |E(F)|/|V(F)| and |E(F)|/(|V(F)|-1) over every subgraph
// (vertex subset and edge subset, not only induced ones).
std::pair<Rational, Rational> brute_exponents(const Motif& m) {
  const int k = m.vertex_count();
  Rational best_m(0), best_m1(0);
  for (std::uint32_t vs = 1; vs < (1u << k); ++vs) {
    std::vector<sgf::MotifEdge> inside;
    for (const auto& [a, b] : m.edges()) {
      if (((vs >> a) & 1u) && ((vs >> b) & 1u)) inside.emplace_back(a, b);
    }
    const int v = std::popcount(vs);
    for (std::uint32_t es = 0; es < (1u << inside.size()); ++es) {
      const int e = std::popcount(es);
      best_m = std::max(best_m, Rational(e, v));
      if (v >= 2) best_m1 = std::max(best_m1, Rational(e, v - 1));
    }
  }
  return {best_m, best_m1};
}

// Ordered pairs of labeled H-copies on {0..N-1}, N = 2k - |V(F)|, whose
// graph intersection is isomorphic to F; grouped by the union's class.
std::vector<std::pair<Motif, std::uint64_t>> brute_joins(const Motif& h, const Motif& f) {
  const int k = h.vertex_count();
  const int total = 2 * k - f.vertex_count();
  struct Copy {
    std::uint32_t vertices;
    std::set<std::pair<int, int>> edges;
  };
  std::vector<Copy> copies;
  for (std::uint32_t vs = 0; vs < (1u << total); ++vs) {
    if (std::popcount(vs) != k) continue;
    std::vector<int> members;
    for (int v = 0; v < total; ++v) {
      if ((vs >> v) & 1u) members.push_back(v);
    }
    std::set<std::set<std::pair<int, int>>> images;
    std::vector<int> perm = members;
    do {
      std::set<std::pair<int, int>> image;
      for (auto [a, b] : h.edges()) image.emplace(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
      images.insert(image);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& img : images) copies.push_back({vs, img});
  }
  std::vector<std::pair<Motif, std::uint64_t>> classes;
  const std::uint32_t all = (1u << total) - 1;
  for (const Copy& a : copies) {
    for (const Copy& b : copies) {
      if ((a.vertices | b.vertices) != all) continue;
      const std::uint32_t shared = a.vertices & b.vertices;
      std::vector<int> rank(static_cast<std::size_t>(total), -1);
      int r = 0;
      for (int v = 0; v < total; ++v) {
        if ((shared >> v) & 1u) rank[static_cast<std::size_t>(v)] = r++;
      }
      std::vector<sgf::MotifEdge> common;
      for (const auto& e : a.edges) {
        if (b.edges.count(e)) common.emplace_back(rank[e.first], rank[e.second]);
      }
      if (!oracle::isomorphic(Motif(r, common), f)) continue;
      std::set<std::pair<int, int>> un = a.edges;
      un.insert(b.edges.begin(), b.edges.end());
      const Motif u(total, std::vector<sgf::MotifEdge>(un.begin(), un.end()));
      auto it = std::find_if(classes.begin(), classes.end(),
                             [&](const auto& c) { return oracle::isomorphic(c.first, u); });
      if (it == classes.end()) {
        classes.emplace_back(u, 1);
      } else {
        ++it->second;
      }
    }
  }
  return classes;
}

sgf::Graph random_host(std::mt19937_64& rng, int n, double p) {
  const Motif m = random_motif(rng, n, p);
  std::vector<sgf::VertexPair> edges;
  for (auto [a, b] : m.edges()) edges.emplace_back(a, b);
  return sgf::Graph(static_cast<std::size_t>(n), edges);
}

oracle::AdjMatrix matrix_of(const sgf::Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edge_list()) edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return oracle::adjacency(static_cast<int>(g.vertex_count()), edges);
}

std::vector<Motif> motifs_up_to_four() {
  std::vector<Motif> out;
  for (int k = 1; k <= 4; ++k) {
    for (const Motif& m : connected_classes(k)) out.push_back(m);
  }
  out.push_back(Motif(4, {{0, 1}, {2, 3}}));  // two disjoint edges
  out.push_back(Motif(3, {{0, 1}}));          // edge plus isolated vertex
  return out;
}

}  // namespace

TEST_CASE("motif construction validates and normalizes edges") {
  const Motif m(3, {{2, 0}, {1, 0}});
  CHECK(m.edges() == std::vector<sgf::MotifEdge>{{0, 1}, {0, 2}});
  CHECK_THROWS_AS(Motif(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Motif(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Motif(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Motif(0, {}), std::invalid_argument);
  for (std::string_view name : sgf::motif_names()) CHECK(sgf::named_motif(name).has_value());
  CHECK_FALSE(sgf::named_motif("nope").has_value());
}

TEST_CASE("canonical form separates classes and ignores labels") {
  const Motif k3 = Motif::complete(3);
  const std::vector<int> perm{2, 0, 1};
  CHECK(sgf::canonical_form(k3) == sgf::canonical_form(k3.relabeled(perm)));
  CHECK(sgf::canonical_form(k3) != sgf::canonical_form(Motif::path(3)));

  // 64 labeled graphs on 4 vertices fall into 11 classes.
  const auto graphs = oracle::all_graphs(4);
  std::vector<Motif> reps;
  for (const Motif& g : graphs) {
    if (std::none_of(reps.begin(), reps.end(), [&](const Motif& r) { return oracle::isomorphic(r, g); })) {
      reps.push_back(g);
    }
  }
  REQUIRE(reps.size() == 11);
  std::set<sgf::CanonicalForm> forms;
  for (const Motif& r : reps) forms.insert(sgf::canonical_form(r));
  CHECK(forms.size() == 11);
  for (const Motif& g : graphs) {
    for (const Motif& r : reps) {
      CHECK((sgf::canonical_form(g) == sgf::canonical_form(r)) == oracle::isomorphic(g, r));
    }
  }
}

TEST_CASE("canonical form is invariant under random relabelings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 8);
    const Motif m = random_motif(rng, k, 0.45);
    const Motif r = m.relabeled(random_permutation(rng, k));
    CHECK(sgf::canonical_form(m) == sgf::canonical_form(r));
    CHECK(sgf::canonical_representative(m) == sgf::canonical_representative(r));
    CHECK(sgf::isomorphic(m, r));
  }
}

TEST_CASE("canonical form agrees with brute-force isomorphism on 5 and 6 vertices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 5 + static_cast<int>(rng() % 2);
    const Motif a = random_motif(rng, k, 0.5);
    const Motif b = (trial % 2 == 0) ? a.relabeled(random_permutation(rng, k)) : random_motif(rng, k, 0.5);
    CHECK((sgf::canonical_form(a) == sgf::canonical_form(b)) == oracle::isomorphic(a, b));
  }
}

TEST_CASE("automorphism counts") {
  CHECK(sgf::automorphism_count(Motif::complete(3)) == 6);
  CHECK(sgf::automorphism_count(Motif::path(3)) == 2);
  CHECK(sgf::automorphism_count(named("triangle_pendant")) == 2);
  CHECK(oracle::automorphisms(named("triangle_pendant")) == 2);
  CHECK(sgf::automorphism_count(Motif::edgeless(20)) == 2432902008176640000ull);
  CHECK_THROWS_AS(sgf::automorphism_count(Motif::edgeless(21)), std::overflow_error);

  for (int k = 1; k <= 5; ++k) {
    for (const Motif& m : oracle::all_graphs(k)) {
      REQUIRE(sgf::automorphism_count(m) == oracle::automorphisms(m));
    }
  }
  std::mt19937_64 rng(3);
  std::uint64_t factorial6 = 720;
  for (int trial = 0; trial < 300; ++trial) {
    const Motif m = random_motif(rng, 6, 0.5);
    const auto aut = sgf::automorphism_count(m);
    CHECK(aut == oracle::automorphisms(m));
    CHECK(factorial6 % aut == 0);
  }
}

TEST_CASE("copies in the complete graph") {
  CHECK(sgf::copies_in_complete(Motif::complete(3), 5) == 10);
  CHECK(sgf::copies_in_complete(Motif::complete(2), 4) == 6);
  CHECK(sgf::copies_in_complete(Motif::path(3), 4) == 12);
  CHECK(sgf::copies_in_complete(Motif::complete(3), 2) == 0);
  CHECK(oracle::count_copies(oracle::adjacency(Motif::complete(4)), Motif::path(3)) == 12);
  CHECK_THROWS_AS(sgf::copies_in_complete(Motif::path(4), 1ull << 40), std::overflow_error);

  for (const Motif& m : motifs_up_to_four()) {
    for (int n = 1; n <= 8; ++n) {
      CHECK(sgf::count_embeddings(sgf::to_graph(Motif::complete(n)), m) ==
            sgf::copies_in_complete(m, static_cast<std::uint64_t>(n)));
    }
  }
}

TEST_CASE("labeled copy masks") {
  const auto masks = sgf::labeled_copy_masks(Motif::path(3));
  CHECK(masks.size() == 3);
  CHECK(std::is_sorted(masks.begin(), masks.end()));
  for (std::uint64_t mask : masks) CHECK(sgf::isomorphic(sgf::motif_from_mask(3, mask), Motif::path(3)));
  CHECK(sgf::labeled_copy_masks(named("fig1b")).size() == 120 / 2);
}

TEST_CASE("density exponents of the figure motifs") {
  const auto fig1b = sgf::density_exponents(named("fig1b"));
  CHECK(fig1b.m == Rational(5, 4));
  CHECK(Rational(5, 4) > Rational(6, 5));
  CHECK_FALSE(fig1b.balanced);
  CHECK_FALSE(fig1b.strictly_balanced);

  const auto pendant = sgf::density_exponents(named("triangle_pendant"));
  CHECK(pendant.m == Rational(1));
  CHECK(pendant.balanced);
  CHECK_FALSE(pendant.strictly_balanced);
  CHECK(pendant.m1 == Rational(3, 2));
  CHECK(Rational(3, 2) > Rational(4, 3));
  CHECK_FALSE(pendant.strongly_balanced);
  REQUIRE(pendant.m1_maximizers.size() == 1);
  CHECK(sgf::isomorphic(pendant.m1_maximizers.front(), Motif::complete(3)));

  const auto fig2a = sgf::density_exponents(named("fig2a"));
  CHECK(fig2a.m == Rational(7, 6));
  CHECK(fig2a.strictly_balanced);
  CHECK_FALSE(fig2a.strongly_balanced);
  CHECK(fig2a.m1 == Rational(3, 2));
  CHECK(Rational(3, 2) > Rational(7, 5));

  const auto k3 = sgf::density_exponents(Motif::complete(3));
  CHECK(k3.m == Rational(1));
  CHECK(k3.m1 == Rational(3, 2));
  CHECK(k3.strictly_balanced);
  CHECK(k3.strictly_strongly_balanced);
  REQUIRE(k3.m1_maximizers.size() == 1);
  CHECK(k3.m1_maximizers.front() == sgf::canonical_representative(Motif::complete(3)));

  CHECK_THROWS_AS(sgf::density_exponents(Motif::edgeless(3)), std::invalid_argument);
  CHECK_THROWS_AS(sgf::density_exponents(Motif::path(13)), std::length_error);
}

TEST_CASE("density exponents match exhaustive subgraph search") {
  for (int k = 2; k <= 5; ++k) {
    for (const Motif& m : oracle::all_graphs(k)) {
      if (m.edge_count() == 0) continue;
      const auto p = sgf::density_exponents(m);
      const auto [bm, bm1] = brute_exponents(m);
      REQUIRE(p.m == bm);
      REQUIRE(p.m1 == bm1);
      CHECK(p.balanced == (Rational(m.edge_count(), k) == bm));
      CHECK(p.strongly_balanced == (Rational(m.edge_count(), k - 1) == bm1));
    }
  }
}

TEST_CASE("m < m1 and strongly balanced implies strictly balanced, connected motifs up to 6 vertices") {
  std::size_t classes = 0;
  for (int k = 2; k <= 6; ++k) {
    for (const Motif& m : connected_classes(k)) {
      ++classes;
      const auto p = sgf::density_exponents(m);
      CHECK(p.m < p.m1);
      if (p.strongly_balanced) CHECK(p.strictly_balanced);
      const bool only_h = p.m1_maximizers.size() == 1 && sgf::isomorphic(p.m1_maximizers.front(), m);
      CHECK(p.strictly_strongly_balanced == only_h);
    }
  }
  CHECK(classes + 1 == 143);  // plus the single vertex, which has no edge
}

TEST_CASE("vertex joins") {
  CHECK(sgf::isomorphic(sgf::vertex_join(Motif::complete(2), 0, 0), Motif::path(3)));
  const Motif bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) CHECK(sgf::isomorphic(sgf::vertex_join(Motif::complete(3), a, b), bowtie));
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 5);
    const Motif m = random_motif(rng, k, 0.5);
    const int a = static_cast<int>(rng() % k), b = static_cast<int>(rng() % k);
    const Motif j = sgf::vertex_join(m, a, b);
    CHECK(j.vertex_count() == 2 * k - 1);
    CHECK(j.edge_count() == 2 * m.edge_count());
    CHECK(sgf::isomorphic(j, sgf::vertex_join(m, b, a)));
  }
  CHECK_THROWS_AS(sgf::vertex_join(Motif::complete(3), 3, 0), std::out_of_range);
  CHECK_THROWS_AS(sgf::vertex_join(Motif::complete(3), 0, -1), std::out_of_range);
}

TEST_CASE("join catalog small cases and errors") {
  const auto k2 = sgf::join_catalog(Motif::complete(2), Motif::complete(2));
  REQUIRE(k2.unions.size() == 1);
  CHECK(sgf::isomorphic(k2.unions[0].union_graph, Motif::complete(2)));
  CHECK(k2.unions[0].eta == 1);

  const auto k3 = sgf::join_catalog(Motif::complete(3), Motif::complete(3));
  REQUIRE(k3.unions.size() == 1);
  CHECK(sgf::isomorphic(k3.unions[0].union_graph, Motif::complete(3)));
  CHECK(k3.unions[0].eta == 1);

  CHECK_THROWS_AS(sgf::join_catalog(Motif::complete(2), Motif::edgeless(1)), std::invalid_argument);
  CHECK_THROWS_AS(sgf::join_catalog(Motif::path(3), Motif::complete(3)), std::invalid_argument);
  CHECK_THROWS_AS(sgf::join_catalog(Motif::path(7), Motif::complete(2)), std::length_error);
}

TEST_CASE("join catalog multiplicities match ordered-pair enumeration") {
  const std::vector<std::pair<Motif, Motif>> cases{
      {Motif::complete(3), Motif::complete(2)},
      {Motif::path(3), Motif::complete(2)},
      {Motif::path(3), Motif(3, {{0, 1}})},
      {Motif::cycle(4), Motif::complete(2)},
      {Motif::cycle(4), Motif::path(3)},
      {named("triangle_pendant"), Motif::complete(3)},
      {named("triangle_pendant"), Motif::complete(2)},
      {named("triangle_pendant"), Motif::path(3)},
      {Motif::complete(4), Motif::complete(3)},
      {Motif::path(4), Motif(4, {{0, 1}, {2, 3}})},
  };
  for (const auto& [h, f] : cases) {
    const auto catalog = sgf::join_catalog(h, f);
    const auto brute = brute_joins(h, f);
    CHECK(sgf::isomorphic(catalog.intersection, f));
    REQUIRE(catalog.unions.size() == brute.size());
    std::uint64_t total = 0, brute_total = 0;
    for (const auto& cls : catalog.unions) {
      CHECK(cls.union_graph.vertex_count() == 2 * h.vertex_count() - f.vertex_count());
      CHECK(cls.union_graph.edge_count() == 2 * h.edge_count() - f.edge_count());
      auto it = std::find_if(brute.begin(), brute.end(),
                             [&](const auto& b) { return oracle::isomorphic(b.first, cls.union_graph); });
      REQUIRE(it != brute.end());
      CHECK(cls.eta == it->second);
      total += cls.eta;
    }
    for (const auto& b : brute) brute_total += b.second;
    CHECK(total == brute_total);
  }
}

TEST_CASE("join catalog depends only on isomorphism classes") {
  const Motif h = named("triangle_pendant");
  const std::vector<int> perm{3, 1, 0, 2};
  const auto a = sgf::join_catalog(h, Motif::complete(2));
  const auto b = sgf::join_catalog(h.relabeled(perm), Motif::complete(2));
  REQUIRE(a.unions.size() == b.unions.size());
  for (std::size_t i = 0; i < a.unions.size(); ++i) {
    CHECK(a.unions[i].union_graph == b.unions[i].union_graph);
    CHECK(a.unions[i].eta == b.unions[i].eta);
  }
}

TEST_CASE("count_embeddings examples and exhaustive oracle") {
  CHECK(sgf::count_embeddings(sgf::to_graph(Motif::complete(4)), Motif::complete(3)) == 4);
  CHECK(sgf::count_embeddings(sgf::to_graph(Motif::cycle(5)), Motif::complete(3)) == 0);
  CHECK(sgf::count_embeddings(sgf::Graph(3, {}), Motif::complete(2)) == 0);

  std::mt19937_64 rng(2024);
  const auto motifs = motifs_up_to_four();
  for (int trial = 0; trial < 100; ++trial) {
    const sgf::Graph host = random_host(rng, 10, 0.2 + 0.5 * static_cast<double>(trial % 5) / 4.0);
    const auto matrix = matrix_of(host);
    for (const Motif& m : motifs) REQUIRE(sgf::count_embeddings(host, m) == oracle::count_copies(matrix, m));
  }
}
