#include "gshv/selftest.hpp"

#include <algorithm>
#include <set>

#include "gshv/adjunctions.hpp"
#include "gshv/gen.hpp"

namespace gshv {

bool SelftestSummary::all_ok() const {
  for (const auto& p : properties)
    if (p.fail > 0) return false;
  return true;
}

bool SelftestSummary::equivalence_violation() const {
  for (const auto& p : properties)
    if (p.fail > 0 && p.name.rfind("ladder", 0) == 0) return true;
  return false;
}

namespace {

std::uint64_t case_seed(std::uint64_t seed, int prop, int k) {
  return seed + 1000003ull * static_cast<std::uint64_t>(prop) +
         static_cast<std::uint64_t>(k);
}

void tally(PropertyResult& r, bool ok, const std::string& note) {
  if (ok) {
    ++r.pass;
  } else {
    ++r.fail;
    if (r.first_failure.empty()) r.first_failure = note;
  }
}

// The section-level map a morphism induces on D(U).
std::vector<int> section_map(const SheafMorphism& f, const SectionSet& su,
                             const SectionSet& tu) {
  std::vector<int> out(su.families.size());
  for (std::size_t i = 0; i < su.families.size(); ++i) {
    std::vector<int> mapped(su.families[i].size());
    for (std::size_t p = 0; p < mapped.size(); ++p)
      mapped[p] = f.comp[su.points[p]][su.families[i][p]];
    int j = tu.index_of(mapped);
    if (j < 0) fail(Errc::SchemaError, "mapped family is not a section");
    out[i] = j;
  }
  return out;
}

bool ess_image_three_predicates(const StarContext& ctx, const GSheaf& d,
                                std::string* note) {
  const int eta = ctx.site->generic();
  bool p1 = sheaf_isomorphic(d, star_constant(ctx, d.stalks[eta]));
  bool p2 = true;
  for (int s = 0; s < ctx.site->size(); ++s) {
    auto fp = fixed_points(d.stalks[eta], ctx.inertia.inertia[s]);
    const auto& m = d.loc_map(s, eta);
    std::set<int> im(m.begin(), m.end());
    if (!is_injective_map(m) ||
        im != std::set<int>(fp.begin(), fp.end()))
      p2 = false;
  }
  bool p3 = true;
  for (const auto& u : opens(*ctx.site)) {
    if (u.empty()) continue;
    SectionSet su = sections(d, u);
    auto m = localization_map(su, eta);
    auto fp = fixed_points(d.stalks[eta],
                           inertia_of_open(ctx.inertia, u).subgroup);
    std::set<int> im(m.begin(), m.end());
    if (!is_injective_map(m) || im != std::set<int>(fp.begin(), fp.end()))
      p3 = false;
  }
  if (p1 != p2 || p2 != p3) {
    *note = "predicates " + std::to_string(p1) + std::to_string(p2) +
            std::to_string(p3) + " disagree";
    return false;
  }
  return true;
}

}  // namespace

SelftestSummary run_selftest(std::uint64_t seed, int cases) {
  SelftestSummary out;
  out.seed = seed;
  out.cases = cases;
  auto& props = out.properties;
  auto prop = [&](const std::string& name) -> PropertyResult& {
    props.push_back(PropertyResult{name, 0, 0, {}});
    return props.back();
  };

  GenBounds bounds;
  GenBounds tiny{3, 4, 3};

  // ---- gset ---------------------------------------------------------------
  {
    auto& fixstable = prop("gset.fixed-points-G-stable");
    auto& qidem = prop("gset.quotient-idempotent");
    auto& injorb = prop("gset.injective-implies-injective-on-orbits");
    auto& lagrange = prop("gset.orbit-partition-lagrange");
    for (int k = 0; k < cases; ++k) {
      Instance inst = gen_instance(case_seed(seed, 0, k), bounds);
      for (int s = 0; s < inst.ctx.site->size(); ++s) {
        const GAction& y = inst.sheaf.stalks[s];
        for (const auto& h : normal_subgroups(*inst.ctx.group)) {
          auto fp = fixed_points(y, h);
          bool stable = true;
          for (int g = 0; g < inst.ctx.group->order(); ++g)
            for (int x : fp)
              if (!std::binary_search(fp.begin(), fp.end(), y.act[g][x]))
                stable = false;
          tally(fixstable, stable, "stalk " + inst.ctx.site->label(s));
        }
        QuotientAction q = quotient(y);
        QuotientAction qq = quotient(q.action);
        tally(qidem, qq.action.size() == q.action.size(),
              "stalk " + inst.ctx.site->label(s));
        bool all_ok = true;
        std::set<int> covered;
        for (const auto& orbit : orbits(y)) {
          if (inst.ctx.group->order() % orbit.size() != 0) all_ok = false;
          for (int x : orbit)
            if (!covered.insert(x).second) all_ok = false;
        }
        if (static_cast<int>(covered.size()) != y.size()) all_ok = false;
        tally(lagrange, all_ok, "stalk " + inst.ctx.site->label(s));
      }
      // injective equivariant maps: orbit-subset inclusions
      const int eta = inst.ctx.site->generic();
      const GAction& y = inst.sheaf.stalks[eta];
      std::vector<int> half;
      for (const auto& orbit : orbits(y))
        if ((orbit.front() % 2) == 0)
          half.insert(half.end(), orbit.begin(), orbit.end());
      std::sort(half.begin(), half.end());
      GAction sub = subaction(y, half);
      tally(injorb, injective_on_orbits(sub, half), "inclusion map");
    }
  }

  // ---- site ---------------------------------------------------------------
  {
    auto& intersection = prop("site.inertia-intersection");
    auto& minimal = prop("site.minimal-open-smallest");
    auto& lattice = prop("site.opens-lattice");
    auto& chaincount = prop("site.chain-opens-count");
    for (int k = 0; k < cases; ++k) {
      Instance inst = gen_instance(case_seed(seed, 1, k), bounds);
      const auto& site = *inst.ctx.site;
      auto all = opens(site);
      for (int s = 0; s < site.size(); ++s) {
        std::set<int> inter;
        for (int g = 0; g < inst.ctx.group->order(); ++g) inter.insert(g);
        for (const auto& u : all) {
          if (u.empty() || !u.contains(s)) continue;
          auto oi = inertia_of_open(inst.ctx.inertia, u);
          std::set<int> next;
          for (int g : oi.subgroup.elements)
            if (inter.count(g)) next.insert(g);
          inter = std::move(next);
        }
        const auto& is = inst.ctx.inertia.inertia[s].elements;
        tally(intersection,
              inter == std::set<int>(is.begin(), is.end()),
              "point " + site.label(s));

        Open mo = minimal_open(site, s);
        bool smallest = true;
        for (const auto& u : all)
          if (u.contains(s) && !mo.subset_of(u)) smallest = false;
        tally(minimal, smallest, "point " + site.label(s));
      }
      bool closed = true;
      for (const auto& a : all)
        for (const auto& b : all) {
          auto has = [&](const Open& x) {
            return std::find(all.begin(), all.end(), x) != all.end();
          };
          if (!has(intersect(a, b)) || !has(unite(a, b))) closed = false;
        }
      tally(lattice, closed, "lattice closure");
    }
    for (int n = 1; n <= 5; ++n)
      tally(chaincount,
            opens(*chain_site(n)).size() == static_cast<std::size_t>(n) + 1,
            "n=" + std::to_string(n));
  }

  // ---- gsheaf -------------------------------------------------------------
  {
    auto& stalkform = prop("gsheaf.alexandrov-stalk-formula");
    auto& shcond = prop("gsheaf.sheaf-condition-equalizer");
    auto& imgfact = prop("gsheaf.image-factorization");
    auto& monosec = prop("gsheaf.mono-iff-sectionwise-injective");
    auto& produ = prop("gsheaf.product-universal-property");
    for (int k = 0; k < cases; ++k) {
      Instance inst = gen_instance(case_seed(seed, 2, k), bounds);
      const GSheaf& d = inst.sheaf;
      for (int s = 0; s < inst.ctx.site->size(); ++s) {
        SectionSet su = sections(d, minimal_open(*inst.ctx.site, s));
        tally(stalkform, gset_isomorphic(su.action, d.stalks[s]),
              "point " + inst.ctx.site->label(s));
      }
      auto all = opens(*inst.ctx.site);
      bool equalizer_ok = true;
      for (const auto& v1 : all)
        for (const auto& v2 : all) {
          if (v1.empty() && v2.empty()) continue;
          Open u = unite(v1, v2);
          Open w = intersect(v1, v2);
          SectionSet su = sections(d, u);
          SectionSet s1 = sections(d, v1);
          SectionSet s2 = sections(d, v2);
          SectionSet sw = sections(d, w);
          auto r1 = restriction_map(d, s1, sw);
          auto r2 = restriction_map(d, s2, sw);
          std::size_t matching = 0;
          for (std::size_t i = 0; i < s1.families.size(); ++i)
            for (std::size_t j = 0; j < s2.families.size(); ++j)
              if (r1[i] == r2[j]) ++matching;
          if (matching != su.families.size()) equalizer_ok = false;
        }
      tally(shcond, equalizer_ok, "instance " + std::to_string(k));

      // canonical morphisms exercise image/mono/epi
      UnitImage q = quotient_sheaf(d);
      UnitImage e = et_image(d);
      for (const SheafMorphism* f : {&q.unit, &e.unit}) {
        ImageFactorization fact = image(*f);
        bool ok = is_epi(fact.epi) && is_mono(fact.mono) &&
                  same_morphism(compose(fact.mono, fact.epi), *f);
        tally(imgfact, ok, "instance " + std::to_string(k));

        bool pointwise = is_mono(*f);
        bool sectionwise = true;
        for (const auto& u : all) {
          if (u.empty()) continue;
          SectionSet su = sections(f->source, u);
          SectionSet tu = sections(f->target, u);
          if (!is_injective_map(section_map(*f, su, tu))) sectionwise = false;
        }
        tally(monosec, pointwise == sectionwise,
              "instance " + std::to_string(k));
      }
    }
    for (int k = 0; k < std::max(1, cases / 10); ++k) {
      Instance inst = gen_instance(case_seed(seed, 3, k), tiny);
      const GSheaf& d = inst.sheaf;
      GSheaf e = quotient_sheaf(d).sheaf;
      GSheaf t = star_constant(inst.ctx, generic_stalk(d));
      GSheaf p = product_sheaf(d, e);
      SheafMorphism p1 = product_projection(d, e, 0);
      SheafMorphism p2 = product_projection(d, e, 1);
      auto homs_d = enumerate_morphisms(t, d);
      auto homs_e = enumerate_morphisms(t, e);
      auto homs_p = enumerate_morphisms(t, p);
      bool ok = true;
      for (const auto& f : homs_d)
        for (const auto& g : homs_e) {
          int count = 0;
          for (const auto& h : homs_p)
            if (same_morphism(compose(p1, h), f) &&
                same_morphism(compose(p2, h), g))
              ++count;
          if (count != 1) ok = false;
        }
      tally(produ, ok, "instance " + std::to_string(k));
    }
  }

  // ---- star: classification equivalences ----------------------------------
  {
    auto& l3 = prop("ladder3-coherence");
    auto& l4 = prop("ladder4-coherence");
    auto& l43 = prop("ladder4-implies-ladder3");
    auto& cover = prop("star.covering-epi-and-pi0-surjective");
    auto& coveriso = prop("star.covering-iso-when-set");
    auto run_ladders = [&](const Instance& inst, const std::string& tag) {
      Ladder3 a = ladder3(inst.ctx, inst.sheaf);
      Ladder4 b = ladder4(inst.ctx, inst.sheaf);
      tally(l3, a.agree(), tag);
      tally(l4, b.agree(), tag);
      tally(l43, !b.value() || a.value(), tag);
      SheafMorphism cov = covering_morphism(inst.sheaf);
      auto to_pi0 = maximal_to_pi0(inst.sheaf);
      std::set<int> hit(to_pi0.begin(), to_pi0.end());
      bool surj = hit.size() == pi0(inst.sheaf).size();
      tally(cover, is_epi(cov) && surj, tag);
      if (b.agree() && b.value())
        tally(coveriso,
              is_isomorphism(cov) && to_pi0.size() == pi0(inst.sheaf).size(),
              tag);
    };
    for (int k = 0; k < cases; ++k)
      run_ladders(gen_instance(case_seed(seed, 4, k), bounds),
                  "star case " + std::to_string(k));
    for (int k = 0; k < std::max(1, (2 * cases) / 5); ++k)
      run_ladders(gen_instance(case_seed(seed, 5, k), bounds, false),
                  "smooth case " + std::to_string(k));
  }

  // ---- star: functor laws ---------------------------------------------------
  {
    auto& counits = prop("star.counit-isos");
    auto& idem = prop("star.idempotence");
    auto& essim = prop("star.ess-image-three-predicates");
    auto& starfix = prop("star.fixed-point-law");
    auto& smi = prop("star.smI-equals-star-part");
    auto& etlemma = prop("star.properties-of-et");
    auto& pioracle = prop("star.pi0-oracle");
    auto& espaceok = prop("star.espace-correspondence");
    auto& staress = prop("star.essential-image-counit");
    for (int k = 0; k < cases; ++k) {
      Instance inst = gen_instance(case_seed(seed, 6, k), bounds);
      const StarContext& ctx = inst.ctx;
      const GSheaf& d = inst.sheaf;
      const int eta = ctx.site->generic();
      std::string tag = "case " + std::to_string(k);

      // counit isos
      GSheaf xs = star_constant(ctx, d.stalks[eta]);
      bool c1 = gset_isomorphic(xs.stalks[eta], d.stalks[eta]);
      Open u = support(d);
      bool c2 = true;
      if (!u.empty()) {
        GSheaf restricted = j_restrict(d, u);
        GSheaf back = j_restrict(j_shriek(ctx.site, u, restricted), u);
        c2 = sheaf_isomorphic(back, restricted);
      }
      tally(counits, c1 && c2, tag);

      // idempotence
      UnitImage et1 = et_image(d);
      UnitImage set1 = set_image(d);
      bool i1 = sheaf_isomorphic(et_image(et1.sheaf).sheaf, et1.sheaf) &&
                is_isomorphism(et_image(et1.sheaf).unit);
      bool i2 = sheaf_isomorphic(set_image(set1.sheaf).sheaf, set1.sheaf) &&
                is_isomorphism(set_image(set1.sheaf).unit);
      GSheaf sp = star_part(ctx, d);
      bool i3 = sheaf_isomorphic(star_part(ctx, sp), sp);
      bool i4 = classify(ctx, et1.sheaf).is_et &&
                classify(ctx, set1.sheaf).is_set;
      tally(idem, i1 && i2 && i3 && i4, tag);

      std::string note;
      tally(essim, ess_image_three_predicates(ctx, d, &note), note);

      // (D^star)_s = D_s^{I(s)} and the section-route computation agrees
      bool fp_ok = true;
      for (int s = 0; s < ctx.site->size(); ++s)
        if (static_cast<int>(
                fixed_points(d.stalks[s], ctx.inertia.inertia[s]).size()) !=
            sp.stalks[s].size())
          fp_ok = false;
      tally(starfix, fp_ok, tag);
      GSheaf smi_d = smI_part(ctx, d);
      bool smi_ok = true;
      for (int s = 0; s < ctx.site->size(); ++s)
        if (!gset_isomorphic(smi_d.stalks[s], sp.stalks[s])) smi_ok = false;
      tally(smi, smi_ok, tag);

      // star essential image: is_star iff the counit sm(D) -> D is an iso,
      // on the generated star instance and on a constant sheaf that is
      // usually not star
      bool counit_iso = true;
      for (int s = 0; s < ctx.site->size(); ++s)
        if (smi_d.stalks[s].size() != d.stalks[s].size()) counit_iso = false;
      tally(staress, is_star(ctx, d) == counit_iso, tag);
      GSheaf creg = constant_sheaf(ctx, regular_action(ctx.group));
      GSheaf smi_creg = smI_part(ctx, creg);
      bool creg_iso = true;
      for (int s = 0; s < ctx.site->size(); ++s)
        if (smi_creg.stalks[s].size() != creg.stalks[s].size())
          creg_iso = false;
      tally(staress, is_star(ctx, creg) == creg_iso, tag + " constant");

      if (classify(ctx, d).is_et)
        tally(etlemma, properties_of_et(ctx, d), tag);
      tally(etlemma, properties_of_et(ctx, et1.sheaf), tag);

      // pi0 against the brute-force oracle
      if (d.total_elements() <= 16) {
        auto components = decompose(d);
        auto brute = pi0_bruteforce(d);
        bool match = components.size() == brute.size();
        if (match) {
          std::vector<bool> used(brute.size(), false);
          for (const auto& c : components) {
            bool found = false;
            for (std::size_t i = 0; i < brute.size(); ++i) {
              if (used[i]) continue;
              bool eq = true;
              for (int s = 0; s < ctx.site->size(); ++s)
                if (c.stalks[s].labels != brute[i].stalks[s].labels) eq = false;
              if (eq) {
                used[i] = true;
                found = true;
                break;
              }
            }
            if (!found) match = false;
          }
          GSheaf reunion = disjoint_union(ctx.site, ctx.group, components);
          if (!sheaf_isomorphic(reunion, d)) match = false;
        }
        tally(pioracle, match, tag);
      }

      // espace etale of the orbit sheaf
      GSheaf dg = quotient_sheaf(d).sheaf;
      EtaleSpace x = espace_etale(dg);
      bool esp = x.local_iso();
      for (const auto& w : opens(*ctx.site)) {
        if (w.empty()) continue;
        auto esecs = espace_sections(x, w);
        SectionSet ss = sections(dg, w);
        std::set<std::vector<int>> from_espace;
        for (const auto& pick : esecs) {
          std::vector<int> fam(pick.size());
          for (std::size_t p = 0; p < pick.size(); ++p)
            fam[p] = x.points[pick[p]].second;
          from_espace.insert(fam);
        }
        std::set<std::vector<int>> from_sheaf(ss.families.begin(),
                                              ss.families.end());
        if (from_espace != from_sheaf) esp = false;
      }
      tally(espaceok, esp, tag);
    }
  }

  // ---- star: adjunctions ----------------------------------------------------
  {
    auto& adj = prop("star.adjunction-bijections");
    int n = std::max(1, cases / 10);
    for (int k = 0; k < n; ++k) {
      Instance inst = gen_instance(case_seed(seed, 7, k), tiny);
      const StarContext& ctx = inst.ctx;
      const GSheaf& d = inst.sheaf;
      std::string tag = "case " + std::to_string(k);
      GSheaf e_loc = quotient_sheaf(d).sheaf;
      GSheaf e_et = et_image(d).sheaf;
      GSheaf e_set = set_image(d).sheaf;

      // a sheaf that generally fails the star condition, so the smI part is
      // a proper subsheaf
      GSheaf d_plain = constant_sheaf(ctx, regular_action(ctx.group));
      tally(adj, check_adjunction_smI(ctx, d, d_plain).ok(), tag + " smI");
      tally(adj, check_adjunction_quotient(d, e_loc).ok(), tag + " quotient");
      tally(adj, check_adjunction_fixed(e_loc, d).ok(), tag + " fixed");
      tally(adj,
            check_adjunction_star_constant(ctx, d, generic_stalk(d)).ok(),
            tag + " star-constant");
      tally(adj, check_adjunction_et(ctx, d, e_et).ok(), tag + " et");
      tally(adj, check_adjunction_set(ctx, d, e_set).ok(), tag + " set");

      // base change along the generic point inclusion and an open inclusion
      auto punctual = validate_site({"eta"}, {}, "eta");
      InertiaProfile source_profile =
          make_profile(punctual, ctx.group, {trivial_subgroup()});
      std::vector<int> to_eta{ctx.site->generic()};
      SiteMap iota = validate_site_map(source_profile, ctx.inertia, to_eta);
      GSheaf e_src = make_sheaf(punctual, ctx.group, {generic_stalk(d)}, {});
      tally(adj, check_adjunction_base_change(iota, d, e_src).ok(),
            tag + " base-change-generic");

      Open supp = support(d);
      if (!supp.empty() && supp.size() < static_cast<std::size_t>(
                                             ctx.site->size())) {
        std::vector<int> idx;
        auto sub = restrict_site(*ctx.site, supp, &idx);
        std::vector<Subgroup> sub_inertia;
        for (int s : supp.members)
          sub_inertia.push_back(ctx.inertia.inertia[s]);
        InertiaProfile sp = make_profile(sub, ctx.group, sub_inertia);
        std::vector<int> incl(supp.members.begin(), supp.members.end());
        SiteMap ju = validate_site_map(sp, ctx.inertia, incl);
        tally(adj,
              check_adjunction_base_change(ju, d, j_restrict(d, supp)).ok(),
              tag + " base-change-open");
      }
    }
  }

  // ---- valuation ------------------------------------------------------------
  {
    auto& summary = prop("valuation.summary-vs-star-module");
    auto& dvr = prop("valuation.dvr-classify-agrees");
    auto& chaincond = prop("valuation.chain-sheaf-condition");
    for (int k = 0; k < cases; ++k) {
      ChainPresheaf cp = gen_chain(case_seed(seed, 8, k), bounds);
      auto [ctx, d] = chain_to_sheaf(cp);
      std::string tag = "chain " + std::to_string(k);
      SummaryFunctors sf = summary_functors(cp);
      auto [sctx, set_sheaf] = chain_to_sheaf(sf.set);
      auto [lctx, loc_sheaf] = chain_to_sheaf(sf.loc);
      auto [ectx, et_sheaf] = chain_to_sheaf(sf.et);
      bool ok = sheaf_isomorphic(set_sheaf, set_image(d).sheaf) &&
                sheaf_isomorphic(loc_sheaf, quotient_sheaf(d).sheaf) &&
                sheaf_isomorphic(et_sheaf, et_image(d).sheaf);
      tally(summary, ok && classify(ctx, d).is_star, tag);

      bool cond = true;
      for (const auto& v1 : opens(*ctx.site))
        for (const auto& v2 : opens(*ctx.site)) {
          Open u = unite(v1, v2);
          SectionSet su = sections(d, u);
          SectionSet s1 = sections(d, v1);
          SectionSet s2 = sections(d, v2);
          SectionSet sw = sections(d, intersect(v1, v2));
          auto r1 = restriction_map(d, s1, sw);
          auto r2 = restriction_map(d, s2, sw);
          std::size_t matching = 0;
          for (std::size_t i = 0; i < s1.families.size(); ++i)
            for (std::size_t j = 0; j < s2.families.size(); ++j)
              if (r1[i] == r2[j]) ++matching;
          if (matching != su.families.size()) cond = false;
        }
      tally(chaincond, cond, tag);
    }
    for (int k = 0; k < cases; ++k) {
      ChainPresheaf cp = gen_chain(case_seed(seed, 9, k), GenBounds{2, 8, 6});
      if (cp.model.n != 2) continue;
      DVRDatum datum;
      datum.group = cp.model.group;
      datum.inertia = cp.model.inertia[1];
      datum.special_stalk = cp.value[1];
      datum.generic_stalk = cp.value[0];
      datum.ell = cp.loc[0];
      DvrClassification dc = dvr_classify(datum);
      auto [ctx, d] = chain_to_sheaf(dvr_to_chain(datum));
      ClassificationReport cr = classify(ctx, d);
      tally(dvr, dc.representable == cr.is_et && dc.separated == cr.is_set,
            "dvr " + std::to_string(k));
    }
  }

  // ---- cli-io -----------------------------------------------------------------
  {
    auto& determinism = prop("io.gen-determinism");
    auto& soundness = prop("io.generator-soundness");
    auto& stability = prop("io.canonical-form-stability");
    for (int k = 0; k < std::max(1, cases / 10); ++k) {
      std::uint64_t s = case_seed(seed, 10, k);
      auto a = gen_instance_json(s, bounds);
      auto b = gen_instance_json(s, bounds);
      tally(determinism, a.dump() == b.dump(), "seed " + std::to_string(s));

      Instance inst = parse_instance(a);
      tally(soundness, is_star(inst.ctx, inst.sheaf),
            "seed " + std::to_string(s));
      auto c = emit_instance(inst);
      tally(stability,
            c.dump() == a.dump() && digest(c) == digest(a),
            "seed " + std::to_string(s));
    }
  }

  return out;
}

nlohmann::json selftest_json(const SelftestSummary& summary) {
  nlohmann::json out;
  out["seed"] = summary.seed;
  out["cases"] = summary.cases;
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : summary.properties) {
    nlohmann::json j;
    j["name"] = p.name;
    j["pass"] = p.pass;
    j["fail"] = p.fail;
    if (!p.first_failure.empty()) j["first_failure"] = p.first_failure;
    props.push_back(j);
  }
  out["properties"] = props;
  out["all_ok"] = summary.all_ok();
  return out;
}

}  // namespace gshv
