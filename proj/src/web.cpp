#include "n3/web.hpp"
#include "n3/parser.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <openssl/evp.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace n3 {

namespace {

std::string strip_fragment(const std::string& iri) {
    std::size_t hash = iri.find('#');
    return hash == std::string::npos ? iri : iri.substr(0, hash);
}

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string sha1_hex(const std::string& data) {
    unsigned char buf[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), buf, &len, EVP_sha1(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[buf[i] >> 4];
        out += hex[buf[i] & 0xF];
    }
    return out;
}

std::string media_type_for_path(const std::string& path) {
    auto ends_with = [&](const char* suffix) {
        std::size_t n = std::strlen(suffix);
        return path.size() >= n && path.compare(path.size() - n, n, suffix) == 0;
    };
    if (ends_with(".ttl") || ends_with(".turtle")) return "text/turtle";
    return "text/n3";
}

bool n3_family(const std::string& media) {
    return media.empty() || media == "text/n3" || media == "text/turtle" ||
           media == "text/rdf+n3" || media == "application/x-turtle" ||
           media == "application/n3" || media == "text/plain";
}

std::string read_file(const std::string& path, const std::string& iri) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FetchError(FetchError::Kind::Io, iri, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& body) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << body;
    }
    std::rename(tmp.c_str(), path.c_str());
}

struct UrlParts {
    bool https = false;
    std::string host_port;
    std::string target;
};

bool split_url(const std::string& iri, UrlParts& out) {
    std::string rest;
    if (iri.rfind("https://", 0) == 0) {
        out.https = true;
        rest = iri.substr(8);
    } else if (iri.rfind("http://", 0) == 0) {
        out.https = false;
        rest = iri.substr(7);
    } else {
        return false;
    }
    std::size_t slash = rest.find('/');
    out.host_port = slash == std::string::npos ? rest : rest.substr(0, slash);
    out.target = slash == std::string::npos ? "/" : rest.substr(slash);
    return !out.host_port.empty();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> load_fixture_map(const std::string& path) {
    std::vector<std::pair<std::string, std::string>> out;
    std::ifstream in(path);
    if (!in) throw FetchError(FetchError::Kind::Io, path, "cannot open fixture map");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        out.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return out;
}

Document Resolver::fetch(const std::string& iri) {
    // Fixture map: longest matching prefix wins.
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& entry : cfg_.fixtures) {
        if (iri.size() >= entry.first.size() &&
            iri.compare(0, entry.first.size(), entry.first) == 0 &&
            (!best || entry.first.size() > best->first.size()))
            best = &entry;
    }
    if (best) {
        std::string path = best->second;
        if (iri.size() > best->first.size()) path += iri.substr(best->first.size());
        Document doc;
        doc.iri = iri;
        doc.final_iri = iri;
        doc.media_type = media_type_for_path(path);
        doc.body = read_file(path, iri);
        doc.retrieved_at = now_utc();
        return doc;
    }

    if (iri.rfind("file://", 0) == 0) {
        std::string path = iri.substr(7);
        if (path.rfind("//", 0) == 0) path = path.substr(2);  // file:////host form
        Document doc;
        doc.iri = iri;
        doc.final_iri = iri;
        doc.media_type = media_type_for_path(path);
        doc.body = read_file(path, iri);
        doc.retrieved_at = now_utc();
        return doc;
    }

    UrlParts parts;
    if (!split_url(iri, parts))
        throw FetchError(FetchError::Kind::Scheme, iri, "unsupported scheme");

    std::string cache_key;
    if (!cfg_.cache_dir.empty()) {
        cache_key = cfg_.cache_dir + "/" + sha1_hex(iri);
        std::ifstream meta(cache_key + ".meta");
        if (meta) {
            Document doc;
            doc.iri = iri;
            std::getline(meta, doc.final_iri);
            std::getline(meta, doc.media_type);
            std::getline(meta, doc.retrieved_at);
            doc.body = read_file(cache_key + ".body", iri);
            return doc;
        }
    }

    if (!cfg_.network_allowed)
        throw FetchError(FetchError::Kind::Offline, iri,
                         "network disabled and no fixture or cache entry");

    std::string accept;
    for (const auto& m : cfg_.accept) {
        if (!accept.empty()) accept += ", ";
        accept += m;
    }

    std::string current = iri;
    for (int hop = 0; hop <= 5; ++hop) {
        UrlParts cur;
        if (!split_url(current, cur))
            throw FetchError(FetchError::Kind::Scheme, current, "unsupported redirect target");
        httplib::Client client((cur.https ? "https://" : "http://") + cur.host_port);
        client.set_connection_timeout(cfg_.timeout_seconds, 0);
        client.set_read_timeout(cfg_.timeout_seconds, 0);
        httplib::Headers headers = {{"Accept", accept}};
        auto res = client.Get(cur.target, headers);
        if (!res) {
            auto err = res.error();
            if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
                throw FetchError(FetchError::Kind::Timeout, current, "request timed out");
            throw FetchError(FetchError::Kind::Io, current,
                             "request failed: " + httplib::to_string(err));
        }
        if (res->status >= 300 && res->status < 400) {
            std::string loc = res->get_header_value("Location");
            if (loc.empty() || hop == 5)
                throw FetchError(FetchError::Kind::Status, current,
                                 "redirect depth exceeded or missing Location");
            current = resolve_iri(current, loc);
            continue;
        }
        if (res->status < 200 || res->status >= 300)
            throw FetchError(FetchError::Kind::Status, current,
                             "status " + std::to_string(res->status));
        Document doc;
        doc.iri = iri;
        doc.final_iri = current;
        doc.media_type = res->get_header_value("Content-Type");
        std::size_t semi = doc.media_type.find(';');
        if (semi != std::string::npos) doc.media_type = doc.media_type.substr(0, semi);
        doc.body = res->body;
        doc.retrieved_at = now_utc();
        if (!cache_key.empty()) {
            write_file_atomic(cache_key + ".body", doc.body);
            write_file_atomic(cache_key + ".meta", doc.final_iri + "\n" + doc.media_type +
                                                       "\n" + doc.retrieved_at + "\n");
        }
        return doc;
    }
    throw FetchError(FetchError::Kind::Status, iri, "redirect depth exceeded");
}

Document Resolver::dereference(const std::string& iri) {
    std::string key = strip_fragment(iri);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = doc_memo_.find(key);
    if (it != doc_memo_.end()) return it->second;
    Document doc = fetch(key);
    doc_memo_[key] = doc;
    return doc;
}

const Formula& Resolver::semantics(const std::string& iri) {
    std::string key = strip_fragment(iri);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = sem_memo_.find(key);
        if (it != sem_memo_.end()) return it->second;
    }
    Document doc = dereference(key);
    if (!n3_family(doc.media_type))
        throw FetchError(FetchError::Kind::Media, key,
                         "no semantics for media type " + doc.media_type);
    Formula f = parse_document(doc.body, key, key);
    std::lock_guard<std::mutex> lock(mu_);
    return sem_memo_.emplace(key, std::move(f)).first->second;
}

}  // namespace n3
