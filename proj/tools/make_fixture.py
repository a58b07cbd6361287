#!/usr/bin/env python3
"""Regenerate data/fixture_names.csv, the bundled miniature name dataset.

Counts follow a Zipf-like popularity curve per gender so that a handful of
names dominate, as in real birth registries. The output is deterministic.
"""
import argparse
import random

FEMALE = """Maria Ana Juliana Mariana Adriana Beatriz Camila Larissa Patricia Aline
Fernanda Gabriela Amanda Bruna Leticia Jessica Vanessa Carla Sandra Simone
Emily Olivia Emma Sophia Isabella Ava Mia Abigail Madison Charlotte
Harper Amelia Evelyn Elizabeth Sofia Chloé Ella Avery Scarlett Grace
Victoria Riley Aria Lily Zoey Hannah Layla Nora Zoe Penelope
Lucía Paula Daniela Sara Carmen Marta Alba Noelia Irene Laura
Léa Manon Inès Jade Louise Camille Zoé Lina Anaïs Océane
Isla Freya Ava Millie Ivy Rosie Eilidh Skye Ellie Orla
Ashley Amy Christina Andrea Alice Agnès Ágata Alicia Alejandra Antonia
Brenda Bianca Clara Cecília Débora Diana Elisa Eloá Fabiana Flávia
Gisele Helena Ingrid Isadora Jaqueline Joana Karen Kelly Lorena Luana
Márcia Mônica Natália Noemi Priscila Rafaela Raquel Renata Rita Rosa
Silvia Tatiane Thaís Valéria Vitória Yasmin Yolanda Zuleica Wanda Úrsula
Alex Robin Jordan Sam Dominique""".split()

MALE = """José João Antônio Francisco Carlos Paulo Pedro Lucas Luiz Marcos
Luis Gabriel Rafael Daniel Marcelo Bruno Eduardo Felipe Raimundo Rodrigo
Liam Noah William James Oliver Benjamin Elijah Mason Logan Alexander
Ethan Jacob Michael Aiden Jackson Sebastian Matthew Samuel David Joseph
Antonio Manuel Javier Miguel Ángel Jesús Alejandro Sergio Fernando Jorge
Gabriel Louis Hugo Léo Arthur Jules Raphaël Adam Théo Maël Nathan
Jack Lewis Harris Callum Finlay Ruaridh Aaron Andrew Brian Adrian
Alberto Álvaro Abel Adão Alan Alfredo Amadeu Anderson André Armando
Benedito Caio César Cícero Diego Edson Elias Emanuel Fábio Gustavo
Henrique Igor Ivan Jefferson Júlio Kaio Leonardo Márcio Mateus Nelson
Otávio Renan Ricardo Roberto Sandro Thiago Tiago Ulisses Vicente Wagner
Xavier Yuri Zeca Alex Robin Jordan Sam Dominique""".split()


def dedupe(names):
    seen = set()
    out = []
    for n in names:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return out


def zipf_counts(names, scale, exponent, rng):
    order = names[:]
    rng.shuffle(order)
    return {name: max(5, int(scale / (rank + 1) ** exponent)) for rank, name in enumerate(order)}


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/fixture_names.csv")
    parser.add_argument("--seed", type=int, default=2019)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    female = zipf_counts(dedupe(FEMALE), 480000, 1.05, rng)
    male = zipf_counts(dedupe(MALE), 520000, 1.05, rng)
    rows = [(n, "F", c) for n, c in female.items()] + [(n, "M", c) for n, c in male.items()]
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        f.write("name,gender,count\n")
        for n, g, c in rows:
            f.write(f"{n},{g},{c}\n")


if __name__ == "__main__":
    main()
