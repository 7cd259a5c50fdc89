#include "sugaman/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sugaman {

const char* room_label_name(RoomLabel label) {
  switch (label) {
    case RoomLabel::bedroom: return "bedroom";
    case RoomLabel::bathroom: return "bathroom";
    case RoomLabel::entry: return "entry";
    case RoomLabel::kitchen: return "kitchen";
    case RoomLabel::hall: return "hall";
  }
  return "?";
}

RoomLabel room_label_from_code(int code) {
  if (code < 1 || code > kRoomLabelCount)
    throw Error(ErrorCategory::parse_error, "room label code out of range");
  return static_cast<RoomLabel>(code);
}

const char* decor_class_token(DecorClass c) {
  switch (c) {
    case DecorClass::bed: return "bed";
    case DecorClass::sofa: return "sofa";
    case DecorClass::large_sofa: return "large_sofa";
    case DecorClass::table: return "table";
    case DecorClass::chair: return "chair";
    case DecorClass::sink: return "sink";
    case DecorClass::twin_sink: return "twin_sink";
    case DecorClass::large_sink: return "large_sink";
    case DecorClass::tub: return "tub";
    case DecorClass::stove: return "stove";
    case DecorClass::wardrobe: return "wardrobe";
    case DecorClass::commode: return "commode";
  }
  return "?";
}

std::string decor_class_display(DecorClass c) {
  std::string s = decor_class_token(c);
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

DecorClass decor_class_from_code(int code) {
  if (code < 1 || code > kDecorClassCount)
    throw Error(ErrorCategory::parse_error, "decor class code out of range");
  return static_cast<DecorClass>(code);
}

DecorClass decor_class_from_token(const std::string& token) {
  for (int c = 1; c <= kDecorClassCount; ++c)
    if (token == decor_class_token(static_cast<DecorClass>(c))) return static_cast<DecorClass>(c);
  throw Error(ErrorCategory::parse_error, "unknown decor class '" + token + "'");
}

namespace {

bool near_equal(Scalar a, Scalar b) { return std::abs(a - b) <= 1e-9; }

}  // namespace

bool DecorInstance::operator==(const DecorInstance& o) const {
  return cls == o.cls && bbox == o.bbox && near_equal(center.x(), o.center.x()) &&
         near_equal(center.y(), o.center.y()) && dir == o.dir;
}

bool Door::operator==(const Door& o) const {
  return id == o.id && near_equal(centroid.x(), o.centroid.x()) &&
         near_equal(centroid.y(), o.centroid.y()) && rooms == o.rooms;
}

bool Room::operator==(const Room& o) const {
  if (!(id == o.id && label == o.label && near_equal(area_sqft, o.area_sqft) &&
        neighbors == o.neighbors && decors == o.decors && global_dir == o.global_dir))
    return false;
  if (polygon.vertices.size() != o.polygon.vertices.size()) return false;
  for (size_t i = 0; i < polygon.vertices.size(); ++i)
    if (!near_equal(polygon.vertices[i].x(), o.polygon.vertices[i].x()) ||
        !near_equal(polygon.vertices[i].y(), o.polygon.vertices[i].y()))
      return false;
  return true;
}

bool SemanticModel::operator==(const SemanticModel& o) const {
  return rooms == o.rooms && doors == o.doors && entry_door == o.entry_door;
}

const Room* SemanticModel::find_room(int id) const {
  for (const auto& r : rooms)
    if (r.id == id) return &r;
  return nullptr;
}

const Door* SemanticModel::find_door(int id) const {
  for (const auto& d : doors)
    if (d.id == id) return &d;
  return nullptr;
}

Eigen::MatrixXi SemanticModel::door_adjacency() const {
  const int n = static_cast<int>(rooms.size());
  Eigen::MatrixXi am = Eigen::MatrixXi::Zero(n, n);
  auto index_of = [&](int id) {
    for (int i = 0; i < n; ++i)
      if (rooms[i].id == id) return i;
    return -1;
  };
  for (const auto& d : doors) {
    if (d.rooms.size() != 2) continue;
    const int a = index_of(d.rooms[0]);
    const int b = index_of(d.rooms[1]);
    if (a < 0 || b < 0 || a == b) continue;
    am(a, b) = am(b, a) = 1;
  }
  return am;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string fmt_num(Scalar v) {
  // Shortest round-trip representation keeps documents byte-deterministic
  // and parseable back to the exact value.
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt_area(Scalar v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void validate(const SemanticModel& m, ErrorCategory cat) {
  for (size_t i = 0; i < m.rooms.size(); ++i) {
    const Room& r = m.rooms[i];
    if (i > 0 && m.rooms[i - 1].id >= r.id)
      throw Error(cat, "rooms must have ascending unique ids");
    if (r.area_sqft <= 0) throw Error(cat, "room area must be positive");
    if (r.polygon.vertices.size() < 3) throw Error(cat, "room polygon needs >= 3 vertices");
    for (int nb : r.neighbors) {
      if (nb == r.id) throw Error(cat, "room cannot neighbor itself");
      const Room* other = m.find_room(nb);
      if (!other) throw Error(cat, "neighbor id not in model");
      if (!std::count(other->neighbors.begin(), other->neighbors.end(), r.id))
        throw Error(cat, "neighbor relation must be symmetric");
    }
    if (!std::is_sorted(r.neighbors.begin(), r.neighbors.end()))
      throw Error(cat, "neighbors must be ascending");
    for (const auto& d : r.decors) {
      if (d.center.x() < d.bbox.x0 - 1e-9 || d.center.x() > d.bbox.x1 + 1e-9 ||
          d.center.y() < d.bbox.y0 - 1e-9 || d.center.y() > d.bbox.y1 + 1e-9)
        throw Error(cat, "decor center must lie inside its bbox");
    }
  }
  for (size_t i = 0; i < m.doors.size(); ++i) {
    const Door& d = m.doors[i];
    if (i > 0 && m.doors[i - 1].id >= d.id)
      throw Error(cat, "doors must have ascending unique ids");
    if (d.rooms.empty() || d.rooms.size() > 2)
      throw Error(cat, "door must touch one or two rooms");
    if (!std::is_sorted(d.rooms.begin(), d.rooms.end()) ||
        std::adjacent_find(d.rooms.begin(), d.rooms.end()) != d.rooms.end())
      throw Error(cat, "door room ids must be ascending and distinct");
    for (int rid : d.rooms)
      if (!m.find_room(rid)) throw Error(cat, "door references unknown room");
  }
  if (m.doors.empty()) {
    if (m.entry_door != -1) throw Error(cat, "entry door set but model has no doors");
  } else if (!m.find_door(m.entry_door)) {
    throw Error(cat, "entry door must exist in doors");
  }
}

}  // namespace

std::string to_xml(const SemanticModel& model) {
  validate(model, ErrorCategory::serialization_refused);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (model.rooms.empty() && model.doors.empty()) {
    out << "<RoomDetails/>\n";
    return out.str();
  }
  out << "<RoomDetails>\n";
  for (const Room& r : model.rooms) {
    out << "  <Room dir=\"" << direction_code(r.global_dir) << "\">\n";
    out << "    <RoomID>" << r.id << "</RoomID>\n";
    out << "    <RoomLabel>" << static_cast<int>(r.label) << "</RoomLabel>\n";
    out << "    <RoomArea>" << fmt_area(r.area_sqft) << "</RoomArea>\n";
    out << "    <RoomCoordinates>";
    for (size_t i = 0; i < r.polygon.vertices.size(); ++i) {
      if (i) out << ' ';
      out << fmt_num(r.polygon.vertices[i].x()) << ',' << fmt_num(r.polygon.vertices[i].y());
    }
    out << "</RoomCoordinates>\n";
    out << "    <RoomNeighbors>";
    for (size_t i = 0; i < r.neighbors.size(); ++i) {
      if (i) out << ' ';
      out << r.neighbors[i];
    }
    out << "</RoomNeighbors>\n";
    if (r.decors.empty()) {
      out << "    <RoomDecors/>\n";
    } else {
      out << "    <RoomDecors>\n";
      for (const auto& d : r.decors) {
        out << "      <Decor class=\"" << escape(decor_class_token(d.cls)) << "\" cx=\""
            << fmt_num(d.center.x()) << "\" cy=\"" << fmt_num(d.center.y()) << "\" dir=\""
            << direction_code(d.dir) << "\" x0=\"" << d.bbox.x0 << "\" y0=\"" << d.bbox.y0
            << "\" x1=\"" << d.bbox.x1 << "\" y1=\"" << d.bbox.y1 << "\"/>\n";
      }
      out << "    </RoomDecors>\n";
    }
    out << "  </Room>\n";
  }
  if (!model.doors.empty()) {
    out << "  <Doors entry=\"" << model.entry_door << "\">\n";
    for (const Door& d : model.doors) {
      out << "    <Door id=\"" << d.id << "\" cx=\"" << fmt_num(d.centroid.x()) << "\" cy=\""
          << fmt_num(d.centroid.y()) << "\" rooms=\"";
      for (size_t i = 0; i < d.rooms.size(); ++i) {
        if (i) out << ' ';
        out << d.rooms[i];
      }
      out << "\"/>\n";
    }
    out << "  </Doors>\n";
  }
  out << "</RoomDetails>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> children;
  std::string text;

  const std::string* attr(const std::string& key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

class XmlParser {
 public:
  explicit XmlParser(const std::string& src) : src_(src) {}

  XmlNode parse_document() {
    skip_ws();
    if (peek_starts("<?")) {
      const size_t end = src_.find("?>", pos_);
      if (end == std::string::npos) fail("unterminated XML declaration");
      pos_ = end + 2;
    }
    skip_ws();
    XmlNode root = parse_element();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing content after root element");
    return root;
  }

 private:
  void fail(const std::string& what) { throw Error(ErrorCategory::parse_error, what); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek_starts(const char* s) const { return src_.compare(pos_, std::strlen(s), s) == 0; }

  std::string read_name() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return src_.substr(start, pos_ - start);
  }

  std::string unescape(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out += s[i];
        continue;
      }
      const size_t semi = s.find(';', i);
      if (semi == std::string::npos) fail("bad entity");
      const std::string ent = s.substr(i + 1, semi - i - 1);
      if (ent == "amp") out += '&';
      else if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else fail("unknown entity &" + ent + ";");
      i = semi;
    }
    return out;
  }

  XmlNode parse_element() {
    if (pos_ >= src_.size() || src_[pos_] != '<') fail("expected '<'");
    ++pos_;
    XmlNode node;
    node.name = read_name();
    while (true) {
      skip_ws();
      if (pos_ >= src_.size()) fail("unterminated tag <" + node.name);
      if (peek_starts("/>")) {
        pos_ += 2;
        return node;
      }
      if (src_[pos_] == '>') {
        ++pos_;
        break;
      }
      std::string key = read_name();
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '=') fail("expected '=' in attribute of " + node.name);
      ++pos_;
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '"') fail("expected '\"' in attribute of " + node.name);
      ++pos_;
      const size_t end = src_.find('"', pos_);
      if (end == std::string::npos) fail("unterminated attribute value in " + node.name);
      node.attrs.emplace_back(key, unescape(src_.substr(pos_, end - pos_)));
      pos_ = end + 1;
    }
    // Content: text and child elements until the closing tag.
    while (true) {
      const size_t lt = src_.find('<', pos_);
      if (lt == std::string::npos) fail("missing </" + node.name + ">");
      node.text += src_.substr(pos_, lt - pos_);
      pos_ = lt;
      if (peek_starts("</")) {
        pos_ += 2;
        const std::string closing = read_name();
        if (closing != node.name) fail("mismatched </" + closing + "> for <" + node.name + ">");
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] != '>') fail("bad closing tag for " + node.name);
        ++pos_;
        node.text = unescape(node.text);
        return node;
      }
      node.children.push_back(parse_element());
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
};

std::string trimmed(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Scalar parse_scalar(const std::string& s, const std::string& path) {
  Scalar v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCategory::parse_error, path + ": bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& path) {
  int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCategory::parse_error, path + ": bad integer '" + s + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

const XmlNode& require_child(const XmlNode& parent, const std::string& name,
                             const std::string& path) {
  for (const auto& c : parent.children)
    if (c.name == name) return c;
  throw Error(ErrorCategory::parse_error, "missing element " + path + "/" + name);
}

const std::string& require_attr(const XmlNode& node, const std::string& key,
                                const std::string& path) {
  const std::string* v = node.attr(key);
  if (!v) throw Error(ErrorCategory::parse_error, path + ": missing attribute '" + key + "'");
  return *v;
}

Room parse_room(const XmlNode& node) {
  static const char* known[] = {"RoomID",          "RoomLabel",     "RoomArea",
                                "RoomCoordinates", "RoomNeighbors", "RoomDecors"};
  for (const auto& c : node.children) {
    bool ok = false;
    for (const char* k : known) ok = ok || c.name == k;
    if (!ok) throw Error(ErrorCategory::parse_error, "unknown element Room/" + c.name);
  }

  Room r;
  r.global_dir = direction_from_code(require_attr(node, "dir", "Room"));
  r.id = parse_int(trimmed(require_child(node, "RoomID", "Room").text), "Room/RoomID");
  r.label = room_label_from_code(
      parse_int(trimmed(require_child(node, "RoomLabel", "Room").text), "Room/RoomLabel"));
  r.area_sqft =
      parse_scalar(trimmed(require_child(node, "RoomArea", "Room").text), "Room/RoomArea");

  for (const std::string& pair :
       split_ws(require_child(node, "RoomCoordinates", "Room").text)) {
    const size_t comma = pair.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCategory::parse_error, "Room/RoomCoordinates: expected x,y pairs");
    r.polygon.vertices.emplace_back(
        parse_scalar(pair.substr(0, comma), "Room/RoomCoordinates"),
        parse_scalar(pair.substr(comma + 1), "Room/RoomCoordinates"));
  }
  for (const std::string& tok : split_ws(require_child(node, "RoomNeighbors", "Room").text))
    r.neighbors.push_back(parse_int(tok, "Room/RoomNeighbors"));

  const XmlNode& decors = require_child(node, "RoomDecors", "Room");
  for (const auto& c : decors.children) {
    if (c.name != "Decor")
      throw Error(ErrorCategory::parse_error, "unknown element Room/RoomDecors/" + c.name);
    DecorInstance d;
    d.cls = decor_class_from_token(require_attr(c, "class", "Decor"));
    d.center = Vec2(parse_scalar(require_attr(c, "cx", "Decor"), "Decor/cx"),
                    parse_scalar(require_attr(c, "cy", "Decor"), "Decor/cy"));
    d.dir = direction_from_code(require_attr(c, "dir", "Decor"));
    d.bbox = Box{parse_int(require_attr(c, "x0", "Decor"), "Decor/x0"),
                 parse_int(require_attr(c, "y0", "Decor"), "Decor/y0"),
                 parse_int(require_attr(c, "x1", "Decor"), "Decor/x1"),
                 parse_int(require_attr(c, "y1", "Decor"), "Decor/y1")};
    r.decors.push_back(d);
  }
  return r;
}

}  // namespace

SemanticModel from_xml(const std::string& bytes) {
  XmlParser parser(bytes);
  const XmlNode root = parser.parse_document();
  if (root.name != "RoomDetails")
    throw Error(ErrorCategory::parse_error, "root element must be RoomDetails, got " + root.name);

  SemanticModel m;
  for (const auto& child : root.children) {
    if (child.name == "Room") {
      Room r = parse_room(child);
      for (const auto& existing : m.rooms)
        if (existing.id == r.id)
          throw Error(ErrorCategory::parse_error,
                      "duplicate room id " + std::to_string(r.id) + " at Room/RoomID");
      m.rooms.push_back(std::move(r));
    } else if (child.name == "Doors") {
      m.entry_door = parse_int(require_attr(child, "entry", "Doors"), "Doors/entry");
      for (const auto& dn : child.children) {
        if (dn.name != "Door")
          throw Error(ErrorCategory::parse_error, "unknown element Doors/" + dn.name);
        Door d;
        d.id = parse_int(require_attr(dn, "id", "Door"), "Door/id");
        d.centroid = Vec2(parse_scalar(require_attr(dn, "cx", "Door"), "Door/cx"),
                          parse_scalar(require_attr(dn, "cy", "Door"), "Door/cy"));
        for (const std::string& tok : split_ws(require_attr(dn, "rooms", "Door")))
          d.rooms.push_back(parse_int(tok, "Door/rooms"));
        m.doors.push_back(std::move(d));
      }
    } else {
      throw Error(ErrorCategory::parse_error, "unknown element RoomDetails/" + child.name);
    }
  }
  validate(m, ErrorCategory::parse_error);
  return m;
}

}  // namespace sugaman
