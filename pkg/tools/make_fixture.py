"""Regenerate fixtures/mini_corpus.csv: 40 synthetic hotel reviews, 20 per class.

Usage: python3 tools/make_fixture.py fixtures/mini_corpus.csv
"""

import csv
import random
import sys

HOTELS = ["hilton", "conrad", "hyatt", "omni", "sofitel", "talbott", "amalfi", "james"]

TRUTHFUL_OPENERS = [
    "Stayed 3 nights in room 1412 for a conference.",
    "We booked through https://www.example.com/deals and paid $189/night.",
    "Checked in around 4pm; the lobby was busy but check-in took 10 minutes.",
    "Our room on the 22nd floor faced the lake.",
    "Arrived late (flight delayed) and the night desk was helpful.",
]
TRUTHFUL_BODIES = [
    "The bathroom was small, the shower pressure decent, and the towels thin.",
    "Location is two blocks from Michigan Ave; the el stop is a 5 minute walk.",
    "Parking cost $45 a day, which felt steep, but the valet was quick.",
    "The café downstairs serves a good croissant and the coffee was fine.",
    "Street noise from the garbage trucks woke us at 6am on Tuesday.",
    "Housekeeping missed our room once; a call to the front desk fixed it.",
    "Wi-Fi was free in the lobby but $12.95 in the rooms.",
    "The bed was firm, the pillows flat, and the A/C rattled a bit.",
]
TRUTHFUL_CLOSERS = [
    "Would stay again for the location, not the rooms.",
    "Overall OK for the price; nothing special.",
    "Fine for a short business trip.",
    "See photos at http://photos.example.org/trip-2009 if curious.",
]

DECEPTIVE_OPENERS = [
    "My husband and I recently celebrated our anniversary here and it was AMAZING!!!",
    "I absolutely loved my stay at this luxurious hotel!",
    "This was the most wonderful experience of my entire life.",
    "My family and I were treated like royalty from the moment we arrived!",
    "I will never, ever stay at this terrible hotel again.",
]
DECEPTIVE_BODIES = [
    "The staff were incredibly friendly and went above and beyond for us.",
    "Everything was perfect, the service was exceptional and the décor elegant.",
    "The luxurious spa made me feel like a queen, truly a naïve dream come true.",
    "I was extremely disappointed, the staff were rude and the service horrible.",
    "Our experience was unforgettable, my husband said it was the best vacation ever.",
    "The amenities were fantastic and the restaurant was absolutely delicious.",
    "I felt so relaxed and pampered, I cannot recommend it enough.",
    "The hotel was filthy, the experience was awful and I felt cheated!",
]
DECEPTIVE_CLOSERS = [
    "I would definitely recommend this hotel to anyone visiting Chicago!!",
    "Five stars, 10/10, will definitely be back!",
    "Do yourself a favor and book elsewhere. Visit www.example.net for better options.",
    "Simply the best hotel in the city!",
]


def review(rng, openers, bodies, closers):
    parts = [rng.choice(openers)] + rng.sample(bodies, 3) + [rng.choice(closers)]
    return " ".join(parts)


def build(seed=7):
    rng = random.Random(seed)
    rows = []
    for i in range(40):
        deceptive = i % 2 == 1
        if deceptive:
            text = review(rng, DECEPTIVE_OPENERS, DECEPTIVE_BODIES, DECEPTIVE_CLOSERS)
            source = "MTurk"
        else:
            text = review(rng, TRUTHFUL_OPENERS, TRUTHFUL_BODIES, TRUTHFUL_CLOSERS)
            source = "TripAdvisor"
        polarity = "positive" if (i // 2) % 2 == 0 else "negative"
        rows.append(["deceptive" if deceptive else "truthful", HOTELS[i % len(HOTELS)], polarity, source, text])
    return rows


def main(path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["deceptive", "hotel", "polarity", "source", "text"])
        writer.writerows(build())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/mini_corpus.csv")
