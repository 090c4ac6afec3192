// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Everything here is property-based at desk scale; the instance
// streams are seeded and fully reproducible.

#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "gshv/adjunctions.hpp"
#include "gshv/gen.hpp"

#include "fixtures.hpp"

using namespace gshv;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

struct Suite {
  std::vector<Instance> star;    // 500 star instances
  std::vector<Instance> smooth;  // 200 not-necessarily-star instances
};

Suite build_suite() {
  Suite s;
  GenBounds bounds;  // |G| <= 8, <= 4 points, stalks <= 6
  for (int k = 0; k < 500; ++k)
    s.star.push_back(gen_instance(100000 + k, bounds, true));
  for (int k = 0; k < 200; ++k)
    s.smooth.push_back(gen_instance(200000 + k, bounds, false));
  return s;
}

// criterion 1: both ladders internally agree on every instance
void criterion_ladders(const Suite& suite) {
  int bad = 0;
  std::string detail;
  auto run = [&](const Instance& inst, const char* tag, int k) {
    Ladder3 a = ladder3(inst.ctx, inst.sheaf);
    Ladder4 b = ladder4(inst.ctx, inst.sheaf);
    if (!a.agree() || !b.agree() || (b.value() && !a.value())) {
      ++bad;
      if (detail.empty())
        detail = std::string(tag) + " instance " + std::to_string(k);
    }
  };
  for (std::size_t k = 0; k < suite.star.size(); ++k)
    run(suite.star[k], "star", static_cast<int>(k));
  for (std::size_t k = 0; k < suite.smooth.size(); ++k)
    run(suite.smooth[k], "smooth", static_cast<int>(k));
  report(1, "ladder equivalence on 500 star + 200 smooth instances", bad == 0,
         bad ? detail : "zero exceptions");
}

// criterion 2: covering epimorphism and pi0 surjectivity; isomorphism and
// bijectivity under the set conditions
void criterion_covering(const Suite& suite) {
  int bad = 0;
  int iso_checked = 0;
  for (const auto& inst : suite.star) {
    SheafMorphism cov = covering_morphism(inst.sheaf);
    auto to_pi0 = maximal_to_pi0(inst.sheaf);
    std::set<int> hit(to_pi0.begin(), to_pi0.end());
    std::size_t n_pi0 = pi0(inst.sheaf).size();
    if (!is_epi(cov) || hit.size() != n_pi0) ++bad;
    Ladder4 b = ladder4(inst.ctx, inst.sheaf);
    if (b.agree() && b.value()) {
      ++iso_checked;
      if (!is_isomorphism(cov) || to_pi0.size() != n_pi0) ++bad;
    }
  }
  report(2, "covering epimorphism and pi0 surjectivity", bad == 0,
         "isomorphism verified on " + std::to_string(iso_checked) +
             " set-sheaf instances");
}

// criterion 3: the adjunction hom-set bijections with triangle identities
void criterion_adjunctions() {
  int bad = 0;
  std::string detail;
  GenBounds tiny{3, 4, 3};
  for (int k = 0; k < 50; ++k) {
    Instance inst = gen_instance(300000 + k, tiny, true);
    const StarContext& ctx = inst.ctx;
    const GSheaf& d = inst.sheaf;
    GSheaf e_loc = quotient_sheaf(d).sheaf;
    GSheaf e_et = et_image(d).sheaf;
    GSheaf e_set = set_image(d).sheaf;
    GSheaf plain = constant_sheaf(ctx, regular_action(ctx.group));

    auto expect = [&](const AdjunctionReport& r, const char* which) {
      if (!r.ok()) {
        ++bad;
        if (detail.empty())
          detail = std::string(which) + " at instance " + std::to_string(k);
      }
    };
    expect(check_adjunction_smI(ctx, d, plain), "smI");
    expect(check_adjunction_quotient(d, e_loc), "quotient");
    expect(check_adjunction_fixed(e_loc, d), "fixed");
    expect(check_adjunction_star_constant(ctx, d, generic_stalk(d)),
           "star-constant");
    expect(check_adjunction_et(ctx, d, e_et), "et");
    expect(check_adjunction_set(ctx, d, e_set), "set");

    auto punctual = validate_site({"eta"}, {}, "eta");
    InertiaProfile ppro =
        make_profile(punctual, ctx.group, {trivial_subgroup()});
    SiteMap iota =
        validate_site_map(ppro, ctx.inertia, {ctx.site->generic()});
    GSheaf e_src = make_sheaf(punctual, ctx.group, {generic_stalk(d)}, {});
    expect(check_adjunction_base_change(iota, d, e_src), "base-change");
  }
  report(3, "adjunction bijections with triangle identities on 50 instances",
         bad == 0, bad ? detail : "7 adjunctions each");
}

// criterion 4: the introductory DVR picture
void criterion_dvr_fixtures() {
  bool ok = true;
  std::string detail;

  auto [ctx, d] = fixtures::double_origin();
  ClassificationReport r = classify(ctx, d);
  if (!(r.is_et && !r.is_set && r.is_star)) {
    ok = false;
    detail = "double origin misclassified";
  }

  // (ell)_set = Im(B_s -> B_eta) and (ell)_et = Im(B_s -> B_eta x G\B_s),
  // checked by hand on the two-element collapse
  UnitImage set = set_image(d);
  UnitImage et = et_image(d);
  if (set.sheaf.stalks[1].size() != 1 ||
      set.sheaf.stalks[1].labels != std::vector<std::string>{"x"}) {
    ok = false;
    detail = "set part of the double origin";
  }
  if (et.sheaf.stalks[1].size() != 2 || !sheaf_isomorphic(et.sheaf, d)) {
    ok = false;
    detail = "et part of the double origin";
  }

  DVRDatum collapse = fixtures::c2_collapse_datum();
  if (dvr_classify(collapse).representable) {
    ok = false;
    detail = "C2 collapse must not be representable";
  }
  auto [cctx, cd] = chain_to_sheaf(dvr_to_chain(collapse));
  if (classify(cctx, cd).is_et) {
    ok = false;
    detail = "C2 collapse classified et";
  }

  report(4, "intro DVR reproduction", ok, detail);
}

// criterion 5: pi0 against the brute-force subobject oracle
void criterion_pi0(const Suite& suite) {
  int bad = 0, checked = 0;
  for (const auto& inst : suite.star) {
    if (inst.sheaf.total_elements() > 16) continue;
    ++checked;
    auto components = decompose(inst.sheaf);
    auto brute = pi0_bruteforce(inst.sheaf);
    bool match = components.size() == brute.size();
    if (match) {
      std::vector<bool> used(brute.size(), false);
      for (const auto& c : components) {
        bool found = false;
        for (std::size_t i = 0; i < brute.size(); ++i) {
          if (used[i]) continue;
          bool eq = true;
          for (int s = 0; s < inst.ctx.site->size(); ++s)
            if (c.stalks[s].labels != brute[i].stalks[s].labels) eq = false;
          if (eq) {
            used[i] = found = true;
            break;
          }
        }
        if (!found) match = false;
      }
    }
    if (match) {
      GSheaf reunion =
          disjoint_union(inst.ctx.site, inst.ctx.group, components);
      if (!sheaf_isomorphic(reunion, inst.sheaf)) match = false;
    }
    if (!match) ++bad;
  }
  report(5, "pi0 matches the brute-force complemented-subobject oracle",
         bad == 0, std::to_string(checked) + " instances within the guard");
}

// criterion 6: the valuation-chain summary against the general machinery
void criterion_chains() {
  int bad = 0;
  for (int k = 0; k < 200; ++k) {
    ChainPresheaf cp = gen_chain(400000 + k, GenBounds{});
    auto [ctx, d] = chain_to_sheaf(cp);
    SummaryFunctors sf = summary_functors(cp);
    if (!sheaf_isomorphic(chain_to_sheaf(sf.set).second,
                          set_image(d).sheaf) ||
        !sheaf_isomorphic(chain_to_sheaf(sf.loc).second,
                          quotient_sheaf(d).sheaf) ||
        !sheaf_isomorphic(chain_to_sheaf(sf.et).second, et_image(d).sheaf))
      ++bad;
    if (cp.model.n == 2) {
      DVRDatum datum;
      datum.group = cp.model.group;
      datum.inertia = cp.model.inertia[1];
      datum.special_stalk = cp.value[1];
      datum.generic_stalk = cp.value[0];
      datum.ell = cp.loc[0];
      ClassificationReport r = classify(ctx, d);
      DvrClassification dc = dvr_classify(datum);
      if (dc.representable != r.is_et || dc.separated != r.is_set) ++bad;
    }
  }
  report(6, "valuation summary functors agree with the star module", bad == 0,
         "200 chains");
}

// criterion 7: the pointwise laws, zero failures across the full star suite
void criterion_lemmas(const Suite& suite) {
  int bad = 0;
  std::string detail;
  auto flag = [&](bool ok, const std::string& which, int k) {
    if (!ok) {
      ++bad;
      if (detail.empty()) detail = which + " at instance " + std::to_string(k);
    }
  };
  for (std::size_t k = 0; k < suite.star.size(); ++k) {
    const Instance& inst = suite.star[k];
    const StarContext& ctx = inst.ctx;
    const GSheaf& d = inst.sheaf;
    const int eta = ctx.site->generic();
    int ik = static_cast<int>(k);

    // essential image of the star-constant functor: three predicates agree
    bool p1 = sheaf_isomorphic(d, star_constant(ctx, d.stalks[eta]));
    bool p2 = true;
    for (int s = 0; s < ctx.site->size(); ++s) {
      auto fp = fixed_points(d.stalks[eta], ctx.inertia.inertia[s]);
      const auto& m = d.loc_map(s, eta);
      if (!is_injective_map(m) ||
          std::set<int>(m.begin(), m.end()) !=
              std::set<int>(fp.begin(), fp.end()))
        p2 = false;
    }
    bool p3 = true;
    for (const auto& u : opens(*ctx.site)) {
      if (u.empty()) continue;
      SectionSet su = sections(d, u);
      auto m = localization_map(su, eta);
      auto fp = fixed_points(d.stalks[eta],
                             inertia_of_open(ctx.inertia, u).subgroup);
      if (!is_injective_map(m) ||
          std::set<int>(m.begin(), m.end()) !=
              std::set<int>(fp.begin(), fp.end()))
        p3 = false;
    }
    flag(p1 == p2 && p2 == p3, "ess-image predicates", ik);

    // sections of an et sheaf are fixed by I(U)
    UnitImage et = et_image(d);
    flag(properties_of_et(ctx, et.sheaf), "properties of et", ik);
    if (classify(ctx, d).is_et)
      flag(properties_of_et(ctx, d), "properties of et (ambient)", ik);

    // the star fixed-point law
    GSheaf sp = star_part(ctx, d);
    for (int s = 0; s < ctx.site->size(); ++s)
      flag(static_cast<int>(
               fixed_points(d.stalks[s], ctx.inertia.inertia[s]).size()) ==
               sp.stalks[s].size(),
           "star fixed-point law", ik);

    // idempotence
    flag(is_isomorphism(et_image(et.sheaf).unit), "et idempotent", ik);
    UnitImage set = set_image(d);
    flag(is_isomorphism(set_image(set.sheaf).unit), "set idempotent", ik);
    flag(sheaf_isomorphic(star_part(ctx, sp), sp), "star idempotent", ik);

    // inertia intersection law
    for (int s = 0; s < ctx.site->size(); ++s) {
      std::set<int> inter;
      for (int g = 0; g < ctx.group->order(); ++g) inter.insert(g);
      for (const auto& u : opens(*ctx.site)) {
        if (u.empty() || !u.contains(s)) continue;
        auto oi = inertia_of_open(ctx.inertia, u);
        std::set<int> keep;
        for (int g : oi.subgroup.elements)
          if (inter.count(g)) keep.insert(g);
        inter = keep;
      }
      const auto& expected = ctx.inertia.inertia[s].elements;
      flag(inter == std::set<int>(expected.begin(), expected.end()),
           "inertia intersection", ik);
    }
  }
  report(7, "fixed-point and idempotence laws across the star suite", bad == 0,
         detail);
}

// criterion 8: determinism of generation and classification digests
void criterion_determinism() {
  auto a = gen_instance_json(1, GenBounds{});
  auto b = gen_instance_json(1, GenBounds{});
  bool ok = a.dump() == b.dump();

  Instance inst = parse_instance(a);
  auto r1 = report_json(inst, classify(inst.ctx, inst.sheaf));
  Instance inst2 = parse_instance(b);
  auto r2 = report_json(inst2, classify(inst2.ctx, inst2.sheaf));
  ok = ok && r1.dump() == r2.dump() &&
       digest(emit_instance(inst)) == digest(emit_instance(inst2));
  report(8, "gen and classify are deterministic", ok, "seed 1, two runs");
}

}  // namespace

int main() {
  Suite suite = build_suite();
  criterion_ladders(suite);
  criterion_covering(suite);
  criterion_adjunctions();
  criterion_dvr_fixtures();
  criterion_pi0(suite);
  criterion_chains();
  criterion_lemmas(suite);
  criterion_determinism();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
