#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "evograph/errors.hpp"
#include "evograph/provider.hpp"
#include "evograph/rng.hpp"

namespace evograph {

namespace {

struct SplitUrl {
    std::string base; // scheme://host[:port]
    std::string path; // /path, defaults to /
};

SplitUrl split_url(const std::string& url) {
    size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw InputError("endpoint '" + url + "' is not a URL");
    }
    size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

uint64_t jitter_ms(int bound_ms) {
    if (bound_ms <= 0) return 0;
    thread_local SplitMix64 rng(static_cast<uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count()));
    return rng.below(static_cast<uint64_t>(bound_ms));
}

} // namespace

HttpProvider::HttpProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {}

std::string HttpProvider::complete(const std::string& prompt) {
    const char* key = nullptr;
    if (!cfg_.api_key_env.empty()) {
        key = std::getenv(cfg_.api_key_env.c_str());
        if (key == nullptr) {
            throw ProviderUnavailableError("environment variable '" + cfg_.api_key_env +
                                           "' is not set");
        }
    }

    SplitUrl url = split_url(cfg_.endpoint);
    httplib::Client client(url.base);
    client.set_connection_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
    client.set_read_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);

    httplib::Headers headers;
    if (key != nullptr) headers.emplace("Authorization", std::string("Bearer ") + key);

    nlohmann::json body = {
        {"model", cfg_.model_name},
        {"messages", {{{"role", "user"}, {"content", prompt}}}},
    };
    const std::string payload = body.dump();

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        if (attempt > 0) {
            int backoff = cfg_.backoff_base_ms * (1 << (attempt - 1));
            std::this_thread::sleep_for(std::chrono::milliseconds(
                backoff + static_cast<int>(jitter_ms(cfg_.backoff_base_ms / 2))));
        }
        auto res = client.Post(url.path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 200 && res->status < 300) {
            try {
                auto j = nlohmann::json::parse(res->body);
                return j.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const std::exception& e) {
                throw ParseFailureError(std::string("malformed completion envelope: ") +
                                        e.what());
            }
        }
        if (res->status >= 500) {
            last_error = "server status " + std::to_string(res->status);
            continue;
        }
        // 4xx: retrying will not help.
        throw ProviderUnavailableError("endpoint rejected the request with status " +
                                       std::to_string(res->status));
    }
    throw ProviderUnavailableError("retries exhausted against '" + cfg_.endpoint +
                                   "': " + last_error);
}

EvolveResponse HttpProvider::evolve(const EvolveRequest& req) {
    auto violations = validate_request(req);
    if (!violations.empty()) throw InputError("invalid evolve request: " + violations.front());

    std::string content = complete(render_evolve_prompt(req));
    EvolveResponse resp = parse_evolve_response(content, req);
    if (resp.candidates.empty()) {
        throw ParseFailureError("no candidate lines parsed from completion");
    }
    return resp;
}

std::vector<std::string> HttpProvider::generate_templates(const TemplateRequest& req) {
    return parse_template_response(complete(render_template_prompt(req)));
}

} // namespace evograph
