#include "geodtn/contacts.h"

#include <algorithm>

#include "geodtn/kernels.h"

namespace geodtn {

ContactPairs detect_contacts(const std::vector<Position>& positions, double range) {
    std::vector<double> xs(positions.size()), ys(positions.size());
    for (size_t i = 0; i < positions.size(); ++i) {
        xs[i] = positions[i].x;
        ys[i] = positions[i].y;
    }
    kernels::ContactPairs pairs;
    kernels::contact_scan(xs, ys, range, pairs);
    return pairs;
}

ContactPairs arbitrate_slots(const ContactPairs& pairs, Rng& rng) {
    ContactPairs order = pairs;
    rng.shuffle(order);
    NodeId max_id = -1;
    for (const auto& [a, b] : order) max_id = std::max({max_id, a, b});
    std::vector<char> busy(static_cast<size_t>(max_id) + 1, 0);
    ContactPairs matched;
    for (const auto& [a, b] : order) {
        if (busy[a] || busy[b]) continue;
        busy[a] = busy[b] = 1;
        matched.push_back({a, b});
    }
    return matched;
}

std::vector<TransferAction> execute_transfers(const Contact& contact, TransferQueue& queue,
                                              double slot_duration) {
    double budget = contact.link_rate * slot_duration / 8.0;
    std::vector<TransferAction> completed;
    while (!queue.done()) {
        const TransferAction& head = queue.actions[queue.next];
        const double needed = static_cast<double>(head.bytes) - queue.head_progress;
        if (needed > budget) {
            queue.head_progress += budget;
            break;
        }
        budget -= needed;
        completed.push_back(head);
        ++queue.next;
        queue.head_progress = 0.0;
    }
    return completed;
}

}  // namespace geodtn
