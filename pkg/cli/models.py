from django.db import models
from django.utils import timezone
from django.utils.text import slugify


class SeederStatus(models.Model):
    name = models.CharField(max_length=100, unique=True)
    executed = models.BooleanField(default=False)
    executed_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        verbose_name_plural = "Seeder Statuses"

    def __str__(self):
        return f"{self.name} - {'Executed' if self.executed else 'Pending'}"


class Curve(models.Model):
    class Kind(models.TextChoices):
        POLY = 'poly', 'Polynomial'
        LINES = 'lines', 'Line arrangement'

    name = models.CharField(max_length=100, unique=True)
    slug = models.SlugField(max_length=120, unique=True, blank=True)
    kind = models.CharField(max_length=10, choices=Kind.choices, default=Kind.POLY)
    expression = models.TextField(blank=True)
    lines = models.JSONField(default=list, blank=True, help_text='Coefficient triples as strings')
    eps_overrides = models.JSONField(default=dict, blank=True, help_text='"a b c" -> eps')
    source = models.CharField(max_length=200, blank=True)
    created = models.DateTimeField(default=timezone.now)

    class Meta:
        ordering = ('name',)

    def save(self, *args, **kwargs):
        if not self.slug:
            self.slug = slugify(self.name)[:120]
        super().save(*args, **kwargs)

    def to_spec(self):
        from .curves import spec_from_fields

        return spec_from_fields({
            'name': self.name,
            'poly': self.expression if self.kind == self.Kind.POLY else '',
            'lines': '\n'.join(' '.join(t) for t in self.lines) if self.kind == self.Kind.LINES else '',
            'eps': '\n'.join(f'{k} = {v}' for k, v in self.eps_overrides.items()),
        })

    def __str__(self):
        return self.name


class Report(models.Model):
    command = models.CharField(max_length=40)
    curve_name = models.CharField(max_length=100)
    payload = models.JSONField()
    refuted = models.BooleanField(default=False)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ('-created',)

    def __str__(self):
        return f"{self.command} {self.curve_name} ({'REFUTED' if self.refuted else 'ok'})"
