#include "gerbecalc/two_groupoid.hpp"

#include <algorithm>

#include "gerbecalc/partition.hpp"

namespace gerbecalc {

namespace {

// Endpoint data is usable for law checks only when both 1-cells exist and
// are parallel.
bool endpoints_ok(const FiniteGroupoid& base, const TwoCellData& d) {
  return base.has_arrow(d.src) && base.has_arrow(d.tgt) &&
         base.src(d.src) == base.src(d.tgt) && base.tgt(d.src) == base.tgt(d.tgt);
}

}  // namespace

TwoGroupoid::TwoGroupoid(FiniteGroupoid base, std::map<Id, TwoCellData> two_cells,
                         std::map<Id, Id> vid, std::map<std::pair<Id, Id>, Id> vcompose,
                         std::map<Id, Id> vinverse,
                         std::map<std::pair<Id, Id>, Id> hcompose)
    : base_(std::move(base)),
      two_cells_(std::move(two_cells)),
      vid_(std::move(vid)),
      vcompose_(std::move(vcompose)),
      vinverse_(std::move(vinverse)),
      hcompose_(std::move(hcompose)) {}

const TwoCellData& TwoGroupoid::two_cell(const Id& a) const {
  auto it = two_cells_.find(a);
  if (it == two_cells_.end()) throw gc_error("no 2-cell '" + a + "'");
  return it->second;
}

const Id& TwoGroupoid::vid(const Id& f) const {
  auto it = vid_.find(f);
  if (it == vid_.end()) throw gc_error("no identity 2-cell on '" + f + "'");
  return it->second;
}

const Id& TwoGroupoid::vcompose(const Id& b, const Id& a) const {
  auto it = vcompose_.find({b, a});
  if (it == vcompose_.end())
    throw gc_error("vertical composite " + b + " after " + a + " not defined");
  return it->second;
}

const Id& TwoGroupoid::hcompose(const Id& b, const Id& a) const {
  auto it = hcompose_.find({b, a});
  if (it == hcompose_.end())
    throw gc_error("horizontal composite " + b + " after " + a + " not defined");
  return it->second;
}

const Id& TwoGroupoid::vinverse(const Id& a) const {
  auto it = vinverse_.find(a);
  if (it == vinverse_.end()) throw gc_error("no vertical inverse for '" + a + "'");
  return it->second;
}

std::vector<Id> TwoGroupoid::two_cells_between(const Id& f, const Id& g) const {
  std::vector<Id> out;
  for (const auto& [a, d] : two_cells_)
    if (d.src == f && d.tgt == g) out.push_back(a);
  return out;
}

FiniteGroupoid TwoGroupoid::hom_groupoid(const Id& x, const Id& y) const {
  std::vector<Id> obs = base_.arrows_between(x, y);
  std::set<Id> in_hom(obs.begin(), obs.end());
  std::vector<MorphismData> ms;
  std::map<Id, Id> identity, inverse;
  std::map<std::pair<Id, Id>, Id> comp;
  for (const auto& [a, d] : two_cells_)
    if (in_hom.count(d.src)) ms.push_back({a, d.src, d.tgt});
  for (const Id& f : obs) identity[f] = vid(f);
  for (const auto& m1 : ms) {
    inverse[m1.id] = vinverse(m1.id);
    for (const auto& m2 : ms)
      if (m1.tgt == m2.src) comp[{m2.id, m1.id}] = vcompose(m2.id, m1.id);
  }
  return FiniteGroupoid(FiniteCategory(obs, ms, identity, comp), inverse);
}

std::vector<Violation> TwoGroupoid::validate() const {
  std::vector<Violation> vs = base_.validate();

  for (const auto& [a, d] : two_cells_) {
    if (!base_.has_arrow(d.src) || !base_.has_arrow(d.tgt)) {
      vs.push_back({"two-cell-endpoints", a});
    } else if (base_.src(d.src) != base_.src(d.tgt) ||
               base_.tgt(d.src) != base_.tgt(d.tgt)) {
      vs.push_back({"two-cell-parallel", a});
    }
  }

  // cells with usable endpoints drive the remaining checks
  std::map<Id, TwoCellData> cells;
  for (const auto& [a, d] : two_cells_)
    if (endpoints_ok(base_, d)) cells[a] = d;

  auto vid_of = [&](const Id& f) -> const Id* {
    auto it = vid_.find(f);
    if (it == vid_.end() || !cells.count(it->second)) return nullptr;
    return &it->second;
  };
  auto vc = [&](const Id& b, const Id& a) -> const Id* {
    auto it = vcompose_.find({b, a});
    if (it == vcompose_.end() || !cells.count(it->second)) return nullptr;
    return &it->second;
  };
  auto hc = [&](const Id& b, const Id& a) -> const Id* {
    auto it = hcompose_.find({b, a});
    if (it == hcompose_.end() || !cells.count(it->second)) return nullptr;
    return &it->second;
  };
  auto base_id = [&](const Id& x) -> const Id* {
    auto it = base_.cat().identity_table().find(x);
    return it == base_.cat().identity_table().end() ? nullptr : &it->second;
  };

  for (const auto& m : base_.arrows()) {
    auto it = vid_.find(m.id);
    if (it == vid_.end()) {
      vs.push_back({"vid-missing", m.id});
    } else if (!two_cells_.count(it->second)) {
      vs.push_back({"vid-unknown", m.id});
    } else {
      const TwoCellData& d = two_cells_.at(it->second);
      if (d.src != m.id || d.tgt != m.id) vs.push_back({"vid-endpoints", m.id});
    }
  }
  for (const auto& [f, a] : vid_)
    if (!base_.has_arrow(f)) vs.push_back({"vid-spurious", f});

  for (const auto& [b, db] : cells)
    for (const auto& [a, da] : cells) {
      if (da.tgt != db.src) continue;
      auto it = vcompose_.find({b, a});
      if (it == vcompose_.end()) {
        vs.push_back({"vcompose-missing", b + " " + a});
      } else if (!two_cells_.count(it->second)) {
        vs.push_back({"vcompose-unknown", b + " " + a});
      } else {
        const TwoCellData& dr = two_cells_.at(it->second);
        if (dr.src != da.src || dr.tgt != db.tgt)
          vs.push_back({"vcompose-endpoints", b + " " + a});
      }
    }
  for (const auto& [pair, r] : vcompose_) {
    auto ib = cells.find(pair.first);
    auto ia = cells.find(pair.second);
    if (ib == cells.end() || ia == cells.end() || ia->second.tgt != ib->second.src)
      vs.push_back({"vcompose-spurious", pair.first + " " + pair.second});
  }

  for (const auto& [a, da] : cells) {
    const Id* l = vid_of(da.src);
    if (l) {
      const Id* c = vc(a, *l);
      if (c && *c != a) vs.push_back({"vcompose-identity", a});
    }
    const Id* r = vid_of(da.tgt);
    if (r) {
      const Id* c = vc(*r, a);
      if (c && *c != a) vs.push_back({"vcompose-identity", a});
    }
  }
  for (const auto& [c, dc] : cells)
    for (const auto& [b, db] : cells) {
      if (db.tgt != dc.src) continue;
      const Id* cb = vc(c, b);
      if (!cb) continue;
      for (const auto& [a, da] : cells) {
        if (da.tgt != db.src) continue;
        const Id* ba = vc(b, a);
        if (!ba) continue;
        const Id* l = vc(*cb, a);
        const Id* r = vc(c, *ba);
        if (l && r && *l != *r)
          vs.push_back({"vcompose-assoc", c + " " + b + " " + a});
      }
    }

  for (const auto& [a, da] : cells) {
    auto it = vinverse_.find(a);
    if (it == vinverse_.end()) {
      vs.push_back({"vinverse-missing", a});
      continue;
    }
    if (!cells.count(it->second)) {
      vs.push_back({"vinverse-unknown", a});
      continue;
    }
    const TwoCellData& di = cells.at(it->second);
    if (di.src != da.tgt || di.tgt != da.src) {
      vs.push_back({"vinverse-endpoints", a});
      continue;
    }
    const Id* l = vc(it->second, a);
    const Id* li = vid_of(da.src);
    if (l && li && *l != *li) vs.push_back({"vinverse-left", a});
    const Id* r = vc(a, it->second);
    const Id* ri = vid_of(da.tgt);
    if (r && ri && *r != *ri) vs.push_back({"vinverse-right", a});
  }
  for (const auto& [a, i] : vinverse_)
    if (!two_cells_.count(a)) vs.push_back({"vinverse-spurious", a});

  auto h_composable = [&](const TwoCellData& db, const TwoCellData& da) {
    return base_.tgt(da.src) == base_.src(db.src);
  };
  for (const auto& [b, db] : cells)
    for (const auto& [a, da] : cells) {
      if (!h_composable(db, da)) continue;
      auto it = hcompose_.find({b, a});
      if (it == hcompose_.end()) {
        vs.push_back({"hcompose-missing", b + " " + a});
      } else if (!two_cells_.count(it->second)) {
        vs.push_back({"hcompose-unknown", b + " " + a});
      } else {
        const TwoCellData& dr = two_cells_.at(it->second);
        auto es = base_.cat().try_compose(db.src, da.src);
        auto et = base_.cat().try_compose(db.tgt, da.tgt);
        if (es && et && (dr.src != *es || dr.tgt != *et))
          vs.push_back({"hcompose-endpoints", b + " " + a});
      }
    }
  for (const auto& [pair, r] : hcompose_) {
    auto ib = cells.find(pair.first);
    auto ia = cells.find(pair.second);
    if (ib == cells.end() || ia == cells.end() ||
        !h_composable(ib->second, ia->second))
      vs.push_back({"hcompose-spurious", pair.first + " " + pair.second});
  }

  // horizontal units are the identity 2-cells on identity 1-cells
  for (const auto& [a, da] : cells) {
    const Id* ix = base_id(base_.src(da.src));
    if (ix) {
      const Id* i = vid_of(*ix);
      if (i) {
        const Id* c = hc(a, *i);
        if (c && *c != a) vs.push_back({"hcompose-identity", a});
      }
    }
    const Id* iy = base_id(base_.tgt(da.src));
    if (iy) {
      const Id* i = vid_of(*iy);
      if (i) {
        const Id* c = hc(*i, a);
        if (c && *c != a) vs.push_back({"hcompose-identity", a});
      }
    }
  }

  // horizontal composition is a functor on hom groupoids: it preserves
  // identity 2-cells and vertical composition (interchange)
  for (const auto& mg : base_.arrows())
    for (const auto& mf : base_.arrows()) {
      if (mf.tgt != mg.src) continue;
      const Id* ig = vid_of(mg.id);
      const Id* jf = vid_of(mf.id);
      auto gf = base_.cat().try_compose(mg.id, mf.id);
      if (!ig || !jf || !gf) continue;
      const Id* igf = vid_of(*gf);
      const Id* c = hc(*ig, *jf);
      if (igf && c && *c != *igf)
        vs.push_back({"hcompose-vid", mg.id + " " + mf.id});
    }
  for (const auto& [b2, db2] : cells)
    for (const auto& [b1, db1] : cells) {
      if (db1.tgt != db2.src) continue;
      const Id* bb = vc(b2, b1);
      if (!bb) continue;
      for (const auto& [a2, da2] : cells)
        for (const auto& [a1, da1] : cells) {
          if (da1.tgt != da2.src || !h_composable(db1, da1)) continue;
          const Id* aa = vc(a2, a1);
          const Id* h2 = hc(b2, a2);
          const Id* h1 = hc(b1, a1);
          if (!aa || !h2 || !h1) continue;
          const Id* l = hc(*bb, *aa);
          const Id* r = vc(*h2, *h1);
          if (l && r && *l != *r)
            vs.push_back({"interchange", b2 + " " + b1 + " " + a2 + " " + a1});
        }
    }

  for (const auto& [c, dc] : cells)
    for (const auto& [b, db] : cells) {
      if (!h_composable(dc, db)) continue;
      const Id* cb = hc(c, b);
      if (!cb) continue;
      for (const auto& [a, da] : cells) {
        if (!h_composable(db, da)) continue;
        const Id* ba = hc(b, a);
        if (!ba) continue;
        const Id* l = hc(*cb, a);
        const Id* r = hc(c, *ba);
        if (l && r && *l != *r)
          vs.push_back({"hcompose-assoc", c + " " + b + " " + a});
      }
    }

  return vs;
}

TwoGroupoid discrete_two_groupoid(const FiniteGroupoid& g) {
  std::map<Id, TwoCellData> cells;
  std::map<Id, Id> vid, vinv;
  std::map<std::pair<Id, Id>, Id> vcomp, hcomp;
  for (const auto& m : g.arrows()) {
    Id a = mint_span(m.id, m.id);
    cells[a] = {m.id, m.id};
    vid[m.id] = a;
    vinv[a] = a;
    vcomp[{a, a}] = a;
  }
  for (const auto& mg : g.arrows())
    for (const auto& mf : g.arrows()) {
      if (mf.tgt != mg.src) continue;
      hcomp[{vid.at(mg.id), vid.at(mf.id)}] = vid.at(g.compose(mg.id, mf.id));
    }
  return TwoGroupoid(g, cells, vid, vcomp, vinv, hcomp);
}

TwoGroupoid resolution_two_groupoid(const FiniteGroupoid& g) {
  std::map<Id, TwoCellData> cells;
  std::map<Id, Id> vid, vinv;
  std::map<std::pair<Id, Id>, Id> vcomp, hcomp;
  for (const Id& x : g.objects())
    for (const Id& y : g.objects()) {
      std::vector<Id> hom = g.arrows_between(x, y);
      for (const Id& f : hom) {
        vid[f] = mint_span(f, f);
        for (const Id& h : hom) {
          cells[mint_span(f, h)] = {f, h};
          vinv[mint_span(f, h)] = mint_span(h, f);
          for (const Id& k : hom) vcomp[{mint_span(h, k), mint_span(f, h)}] = mint_span(f, k);
        }
      }
    }
  for (const auto& [b, db] : cells)
    for (const auto& [a, da] : cells) {
      if (g.tgt(da.src) != g.src(db.src)) continue;
      hcomp[{b, a}] = mint_span(g.compose(db.src, da.src), g.compose(db.tgt, da.tgt));
    }
  return TwoGroupoid(g, cells, vid, vcomp, vinv, hcomp);
}

TwoGroupoid suspension_two_groupoid(const FiniteGroup& k, const Id& object) {
  for (const Id& a : k.elements())
    for (const Id& b : k.elements())
      if (k.mul(a, b) != k.mul(b, a))
        throw precondition_error("suspension needs an abelian group");
  FiniteGroupoid base = discrete_groupoid({object});
  Id loop = mint_span(object, object);
  std::map<Id, TwoCellData> cells;
  std::map<Id, Id> vid, vinv;
  std::map<std::pair<Id, Id>, Id> vcomp, hcomp;
  for (const Id& a : k.elements()) {
    cells[a] = {loop, loop};
    vinv[a] = k.inv(a);
    for (const Id& b : k.elements()) {
      vcomp[{b, a}] = k.mul(b, a);
      hcomp[{b, a}] = k.mul(b, a);
    }
  }
  vid[loop] = k.unit();
  return TwoGroupoid(base, cells, vid, vcomp, vinv, hcomp);
}

TwoGroupoid crossed_module_two_groupoid(const FiniteGroup& q,
                                        const std::set<Id>& normal_subgroup,
                                        const Id& object) {
  const auto& elems = q.elements();
  for (const Id& a : normal_subgroup)
    if (std::find(elems.begin(), elems.end(), a) == elems.end())
      throw precondition_error("crossed module: unknown element " + a);
  if (!normal_subgroup.count(q.unit()))
    throw precondition_error("crossed module: subgroup must contain the unit");
  for (const Id& a : normal_subgroup) {
    if (!normal_subgroup.count(q.inv(a)))
      throw precondition_error("crossed module: subgroup not closed under inverse");
    for (const Id& b : normal_subgroup)
      if (!normal_subgroup.count(q.mul(a, b)))
        throw precondition_error("crossed module: subgroup not closed under product");
  }
  for (const Id& p : elems)
    for (const Id& a : normal_subgroup)
      if (!normal_subgroup.count(q.conj(p, a)))
        throw precondition_error("crossed module: subgroup not normal");

  FiniteGroupoid base = group_as_groupoid(q, object);
  std::map<Id, TwoCellData> cells;
  std::map<Id, Id> vid, vinv;
  std::map<std::pair<Id, Id>, Id> vcomp, hcomp;
  for (const Id& g : elems) {
    vid[g] = mint_product(g, q.unit());
    for (const Id& k : normal_subgroup) {
      Id a = mint_product(g, k);
      cells[a] = {g, q.mul(k, g)};
      vinv[a] = mint_product(q.mul(k, g), q.inv(k));
      for (const Id& k2 : normal_subgroup)
        vcomp[{mint_product(q.mul(k, g), k2), a}] = mint_product(g, q.mul(k2, k));
    }
  }
  for (const Id& p : elems)
    for (const Id& l : normal_subgroup)
      for (const Id& g : elems)
        for (const Id& k : normal_subgroup)
          hcomp[{mint_product(p, l), mint_product(g, k)}] =
              mint_product(q.mul(p, g), q.mul(l, q.conj(p, k)));
  return TwoGroupoid(base, cells, vid, vcomp, vinv, hcomp);
}

std::vector<Violation> validate_two_hom(const TwoGroupoid& g, const TwoGroupoid& h,
                                        const TwoGroupoidHom& f) {
  std::vector<Violation> vs = validate_groupoid_hom(g.base(), h.base(), {f.ob, f.ar});

  for (const auto& [a, d] : g.two_cells()) {
    auto it = f.two.find(a);
    if (it == f.two.end()) {
      vs.push_back({"hom-two-missing", a});
      continue;
    }
    if (!h.has_two_cell(it->second)) {
      vs.push_back({"hom-two-image", a});
      continue;
    }
    auto is_ = f.ar.find(d.src);
    auto it_ = f.ar.find(d.tgt);
    if (is_ == f.ar.end() || it_ == f.ar.end()) continue;
    const TwoCellData& dd = h.two_cells().at(it->second);
    if (dd.src != is_->second || dd.tgt != it_->second)
      vs.push_back({"hom-two-endpoints", a});
  }
  for (const auto& [one, a] : g.vid_table()) {
    auto i1 = f.ar.find(one);
    auto i2 = f.two.find(a);
    if (i1 == f.ar.end() || i2 == f.two.end()) continue;
    auto hv = h.vid_table().find(i1->second);
    if (hv != h.vid_table().end() && i2->second != hv->second)
      vs.push_back({"hom-two-identity", one});
  }
  for (const auto& [pair, r] : g.vcompose_table()) {
    auto ib = f.two.find(pair.first);
    auto ia = f.two.find(pair.second);
    auto ir = f.two.find(r);
    if (ib == f.two.end() || ia == f.two.end() || ir == f.two.end()) continue;
    auto hr = h.vcompose_table().find({ib->second, ia->second});
    if (hr != h.vcompose_table().end() && hr->second != ir->second)
      vs.push_back({"hom-two-vcompose", pair.first + " " + pair.second});
  }
  for (const auto& [pair, r] : g.hcompose_table()) {
    auto ib = f.two.find(pair.first);
    auto ia = f.two.find(pair.second);
    auto ir = f.two.find(r);
    if (ib == f.two.end() || ia == f.two.end() || ir == f.two.end()) continue;
    auto hr = h.hcompose_table().find({ib->second, ia->second});
    if (hr != h.hcompose_table().end() && hr->second != ir->second)
      vs.push_back({"hom-two-hcompose", pair.first + " " + pair.second});
  }
  return vs;
}

TwoGroupoidHom identity_two_hom(const TwoGroupoid& g) {
  GroupoidHom b = identity_hom(g.base());
  TwoGroupoidHom out{b.ob, b.ar, {}};
  for (const auto& [a, d] : g.two_cells()) out.two[a] = a;
  return out;
}

TwoGroupoidHom compose_two_homs(const TwoGroupoidHom& g, const TwoGroupoidHom& f) {
  TwoGroupoidHom out;
  for (const auto& [x, y] : f.ob) out.ob[x] = g.ob.at(y);
  for (const auto& [x, y] : f.ar) out.ar[x] = g.ar.at(y);
  for (const auto& [x, y] : f.two) out.two[x] = g.two.at(y);
  return out;
}

std::map<Id, Id> one_cell_classes(const TwoGroupoid& g) {
  std::vector<Id> ones;
  for (const auto& m : g.one_cells()) ones.push_back(m.id);
  std::vector<std::pair<Id, Id>> edges;
  for (const auto& [a, d] : g.two_cells()) edges.push_back({d.src, d.tgt});
  return least_representatives(ones, edges);
}

FiniteGroupoid component_groupoid(const TwoGroupoid& g) {
  auto reps = one_cell_classes(g);
  std::set<Id> classes;
  for (const auto& [f, r] : reps) classes.insert(r);
  std::vector<MorphismData> ms;
  std::map<Id, Id> identity, inverse;
  std::map<std::pair<Id, Id>, Id> comp;
  for (const Id& r : classes) ms.push_back({r, g.base().src(r), g.base().tgt(r)});
  for (const Id& x : g.objects()) identity[x] = reps.at(g.base().identity_of(x));
  for (const Id& r2 : classes) {
    inverse[r2] = reps.at(g.base().inverse(r2));
    for (const Id& r1 : classes)
      if (g.base().tgt(r1) == g.base().src(r2))
        comp[{r2, r1}] = reps.at(g.base().compose(r2, r1));
  }
  return FiniteGroupoid(FiniteCategory(g.objects(), ms, identity, comp), inverse);
}

}  // namespace gerbecalc
