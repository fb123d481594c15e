from django import forms

FORMAT_CHOICES = [
    ('json', 'JSON'),
    ('dot', 'DOT'),
    ('text', 'Text'),
]


class RunConfigForm(forms.Form):
    """Validates the global run options shared by every command"""

    max_words = forms.IntegerField(required=False, min_value=1)
    max_vertices = forms.IntegerField(required=False, min_value=1)
    max_prefix = forms.IntegerField(required=False, min_value=1)
    seed = forms.IntegerField(required=False, min_value=0)
    horizon = forms.IntegerField(required=False, min_value=1)
    format = forms.ChoiceField(choices=FORMAT_CHOICES, required=False)
    output = forms.CharField(required=False)

    def clean_format(self):
        return self.cleaned_data.get('format') or 'json'

    def cap_overrides(self):
        """Mapping for :func:`shifts.conf.override_caps`"""
        data = self.cleaned_data
        return {
            'SHIFTS_MAX_WORDS': data.get('max_words'),
            'SHIFTS_MAX_VERTICES': data.get('max_vertices'),
            'SHIFTS_MAX_PREFIX': data.get('max_prefix'),
        }

    def error_text(self):
        return '; '.join(f"{field}: {' '.join(errors)}" for field, errors in self.errors.items())
